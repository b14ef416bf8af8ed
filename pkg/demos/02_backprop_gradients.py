"""
Backpropagation, checked against finite differences
===================================================

The 5-10-1 network is trained by explicit per-sample gradient descent.
Before trusting the update rules we compare every analytic gradient to a
central finite difference, then watch the training loss fall.
"""

import numpy as np

import regionstab as rs

# A seeded network: uniform [-0.5, 0.5] weights, reproducible per seed.
config = rs.NetworkConfig(rng_seed=3)
net = rs.initialize(config)
print("topology:", f"{net.n_input}-{net.n_hidden}-{net.n_output}")

# Gradient check: perturb each of the 81 parameters by +/- 1e-5 and
# compare the slope of the loss to the backprop formulas.
rng = np.random.default_rng(0)
x = rng.uniform(-2.0, 2.0, 5)
d = np.array([0.35])
err = rs.gradient_check(net, x, d, epsilon=1e-5)
print(f"worst relative gradient error: {err:.3e}")

# One explicit update step and its effect on the single-sample loss.
before = rs.loss(d, rs.forward(net, x)[1])
stepped = rs.backprop_step(net, x, d, learning_rate=0.05)
after = rs.loss(d, rs.forward(stepped, x)[1])
print(f"single step: loss {before:.6f} -> {after:.6f}")

# Full training run on a teacher-student task: a second seeded network
# labels 50 random inputs and the student has to imitate it.
teacher = rs.initialize(rs.NetworkConfig(rng_seed=1234))
inputs = np.random.default_rng(99).uniform(-1.0, 1.0, (50, 5))
labels = rs.forward_batch(teacher, inputs)

student, report = rs.train(config, inputs, labels)
print(f"\ntrained for {report.epochs_run} epochs ({report.stop_reason})")
print(f"loss: first epoch {report.loss_history[0]:.2e}, "
      f"last epoch {report.loss_history[-1]:.2e}")
