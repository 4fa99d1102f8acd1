"""
Air-to-ground link budget
=========================

How elevation, distance and the interference cap shape what a TSBS hears
from one child-UAV hovering at 500 m.
"""
import numpy as np

from uavfronthaul.channel import (
    db_to_lin, elevation_angle, free_space_loss_db, lin_to_db, los_probability, optimal_power,
    path_loss_db, slant_distance,
)
from uavfronthaul.scenario import ScenarioConfig

cfg = ScenarioConfig()
h = 500.0
d = np.array([0.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0])

# elevation drives the LoS probability, which blends the two excess losses
theta = elevation_angle(d, h)
p_los = los_probability(theta, cfg.alpha, cfg.beta)
s = slant_distance(d, h)
loss = path_loss_db(s, p_los, cfg)

# no fading here: the channel gain is just the inverse path loss
g = db_to_lin(-loss)
omega, _ = optimal_power(g, cfg)
rx_dbw = lin_to_db(omega * g)

print(f"{'d (m)':>8} {'theta':>7} {'p_los':>7} {'FSPL':>7} {'loss':>7} {'omega W':>9} {'rx dBW':>8} {'SNR dB':>7}")
for row in zip(d, theta, p_los, free_space_loss_db(s, cfg), loss, omega, rx_dbw):
    snr = row[-1] - cfg.noise_dbw
    print("{:8.0f} {:7.1f} {:7.3f} {:7.1f} {:7.1f} {:9.2e} {:8.1f} {:7.1f}".format(*row, snr))

# the threshold binds even 4 km out, so a per-link power lands every TSBS on exactly i_th
print(f"\nreceived power ceiling 10log10(i_th) = {lin_to_db(cfg.i_th):.1f} dBW")
print(f"noise floor                        = {cfg.noise_dbw:.1f} dBW")
print(f"best possible SNR                  = {lin_to_db(cfg.i_th) - cfg.noise_dbw:.1f} dB")
