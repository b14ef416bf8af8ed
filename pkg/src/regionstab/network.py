"""Three-layer fully connected network trained by explicit backpropagation.

The default topology is 5 inputs, 10 sigmoid hidden cells, 1 sigmoid output.
Training is online gradient descent on the square error e = 1/2 sum (d - y)^2:
samples are visited in fixed dataset order and every weight update uses
gradients evaluated at the pre-update weights. Biases are treated as weights
on a constant input of 1 and follow the same update rule.

Weight initialization is uniform in [-0.5, 0.5] from a seeded generator, so
identical configuration and data reproduce bit-identical networks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyDatasetError,
    InputOutputError,
    LabelOutOfRangeError,
    LengthMismatchError,
    NonFiniteError,
)

STOP_CONVERGED = "converged"
STOP_MAX_EPOCHS = "max_epochs"

# Small-gradient floor for relative-error denominators in gradient_check:
# below this scale, finite-difference noise would dominate a pure ratio.
_GRAD_DENOM_FLOOR = 1e-5


def sigmoid(t):
    return 1.0 / (1.0 + np.exp(-t))


@dataclass(frozen=True)
class NetworkConfig:
    n_input: int = 5
    n_hidden: int = 10
    n_output: int = 1
    learning_rate: float = 0.05
    max_epochs: int = 10000
    loss_tolerance: float = 1e-6
    rng_seed: int = 0

    def __post_init__(self):
        if min(self.n_input, self.n_hidden, self.n_output) < 1:
            raise DimensionMismatchError("layer sizes must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.loss_tolerance < 0:
            raise ValueError("loss_tolerance must be >= 0")


@dataclass(frozen=True)
class Network:
    """Immutable weight/bias snapshot of a three-layer network."""

    hidden_weights: np.ndarray   # (n_hidden, n_input)
    hidden_biases: np.ndarray    # (n_hidden,)
    output_weights: np.ndarray   # (n_output, n_hidden)
    output_biases: np.ndarray    # (n_output,)

    def __post_init__(self):
        for name in ("hidden_weights", "hidden_biases", "output_weights", "output_biases"):
            a = np.array(getattr(self, name), dtype=float)  # snapshot copy
            a.setflags(write=False)
            object.__setattr__(self, name, a)
            if not np.isfinite(a).all():
                raise NonFiniteError("?", name)
        nh, ni = self.hidden_weights.shape
        no, nh2 = self.output_weights.shape
        if nh2 != nh or self.hidden_biases.shape != (nh,) or self.output_biases.shape != (no,):
            raise DimensionMismatchError("inconsistent layer shapes")

    @property
    def n_input(self) -> int:
        return self.hidden_weights.shape[1]

    @property
    def n_hidden(self) -> int:
        return self.hidden_weights.shape[0]

    @property
    def n_output(self) -> int:
        return self.output_weights.shape[0]


@dataclass(frozen=True)
class TrainReport:
    epochs_run: int
    loss_history: tuple
    stop_reason: str


def initialize(config: NetworkConfig) -> Network:
    """Seeded uniform [-0.5, 0.5] weights and biases.

    Draw order is fixed (hidden weights, hidden biases, output weights,
    output biases, each row-major) so a seed pins the exact network.
    """
    rng = np.random.default_rng(config.rng_seed)
    u = lambda *shape: rng.uniform(-0.5, 0.5, shape)
    return Network(
        hidden_weights=u(config.n_hidden, config.n_input),
        hidden_biases=u(config.n_hidden),
        output_weights=u(config.n_output, config.n_hidden),
        output_biases=u(config.n_output),
    )


def forward(net: Network, x) -> tuple[np.ndarray, np.ndarray]:
    """Activations of the hidden and output layers for one input vector.

    hidden_j = sigmoid(sum_k w_jk x_k + b_j), y_i = sigmoid(sum_j w_ij h_j + b_i).
    Both layers stay strictly inside (0, 1).
    """
    xa = np.asarray(x, dtype=float)
    if xa.shape != (net.n_input,):
        raise DimensionMismatchError(f"expected input of shape ({net.n_input},), got {xa.shape}")
    if not np.isfinite(xa).all():
        raise NonFiniteError(int(np.argwhere(~np.isfinite(xa))[0][0]), "input")
    hidden = sigmoid(net.hidden_weights @ xa + net.hidden_biases)
    y = sigmoid(net.output_weights @ hidden + net.output_biases)
    return hidden, y


def forward_batch(net: Network, inputs) -> np.ndarray:
    """Output activations for an (n, n_input) batch, one row per sample."""
    a = np.asarray(inputs, dtype=float)
    if a.ndim != 2 or a.shape[1] != net.n_input:
        raise DimensionMismatchError(f"expected (n, {net.n_input}) inputs, got {a.shape}")
    hidden = sigmoid(a @ net.hidden_weights.T + net.hidden_biases)
    return sigmoid(hidden @ net.output_weights.T + net.output_biases)


def loss(desired, actual) -> float:
    """Square error e = 1/2 sum_i (d_i - y_i)^2."""
    d = np.asarray(desired, dtype=float)
    y = np.asarray(actual, dtype=float)
    if d.shape != y.shape:
        raise LengthMismatchError(f"shape {d.shape} vs {y.shape}")
    diff = d - y
    return 0.5 * float(diff @ diff)


def _gradients(net: Network, x, d):
    """Analytic square-error gradients for every weight and bias.

    Output layer:  de/dw_ij = h_j * y_i (1 - y_i) (y_i - d_i)
    Hidden layer:  de/dw_jk = x_k * h_j (1 - h_j) * sum_i w_ij y_i (1 - y_i) (y_i - d_i)
    Biases use the same expressions with the input factor fixed to 1.
    """
    xa = np.asarray(x, dtype=float)
    da = np.asarray(d, dtype=float)
    if da.shape != (net.n_output,):
        raise DimensionMismatchError(f"expected target of shape ({net.n_output},), got {da.shape}")
    hidden, y = forward(net, xa)
    g_out = y * (1.0 - y) * (y - da)                      # (n_output,)
    grad_ow = np.outer(g_out, hidden)
    grad_ob = g_out
    back = net.output_weights.T @ g_out                   # (n_hidden,)
    g_hid = hidden * (1.0 - hidden) * back
    grad_hw = np.outer(g_hid, xa)
    grad_hb = g_hid
    return grad_hw, grad_hb, grad_ow, grad_ob


def backprop_step(net: Network, x, d, learning_rate: float) -> Network:
    """One gradient-descent update on a single sample; returns a new network.

    All four gradients are evaluated at the incoming weights before any
    parameter is changed.
    """
    grad_hw, grad_hb, grad_ow, grad_ob = _gradients(net, x, d)
    eta = float(learning_rate)
    return Network(
        hidden_weights=net.hidden_weights - eta * grad_hw,
        hidden_biases=net.hidden_biases - eta * grad_hb,
        output_weights=net.output_weights - eta * grad_ow,
        output_biases=net.output_biases - eta * grad_ob,
    )


def dataset_loss(net: Network, inputs, labels) -> float:
    """Mean per-sample square error over a whole dataset."""
    y = forward_batch(net, inputs)
    diff = np.asarray(labels, dtype=float) - y
    return 0.5 * float((diff * diff).sum(axis=1).mean())


def train(config: NetworkConfig, inputs, labels) -> tuple[Network, TrainReport]:
    """Online gradient descent over the dataset in fixed order.

    ``inputs`` is (n, n_input); ``labels`` is (n, n_output) with every entry
    strictly inside (0, 1), the open range of the sigmoid output. The
    reported per-epoch loss is the mean per-sample square error evaluated
    after the epoch's updates; training stops when the epoch-over-epoch loss
    delta falls below ``loss_tolerance`` or at ``max_epochs``.
    """
    X = np.asarray(inputs, dtype=float)
    D = np.asarray(labels, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDatasetError("need at least one training sample")
    if X.shape[1] != config.n_input:
        raise DimensionMismatchError(f"expected (n, {config.n_input}) inputs, got {X.shape}")
    if D.shape != (X.shape[0], config.n_output):
        raise DimensionMismatchError(f"expected labels of shape ({X.shape[0]}, {config.n_output})")
    if not np.isfinite(X).all():
        raise NonFiniteError("?", "inputs")
    if ((D <= 0.0) | (D >= 1.0)).any() or not np.isfinite(D).all():
        raise LabelOutOfRangeError("labels must lie strictly inside (0, 1)")

    net = initialize(config)
    hw = net.hidden_weights.copy()
    hb = net.hidden_biases.copy()
    ow = net.output_weights.copy()
    ob = net.output_biases.copy()
    eta = config.learning_rate

    losses = []
    stop = STOP_MAX_EPOCHS
    for epoch in range(config.max_epochs):
        for x, d in zip(X, D):
            hidden = sigmoid(hw @ x + hb)
            y = sigmoid(ow @ hidden + ob)
            g_out = y * (1.0 - y) * (y - d)
            back = ow.T @ g_out
            g_hid = hidden * (1.0 - hidden) * back
            # Same update order as backprop_step; deltas all read the
            # pre-update weights (back is computed before ow changes).
            ow -= eta * np.outer(g_out, hidden)
            ob -= eta * g_out
            hw -= eta * np.outer(g_hid, x)
            hb -= eta * g_hid

        hidden_all = sigmoid(X @ hw.T + hb)
        y_all = sigmoid(hidden_all @ ow.T + ob)
        diff = D - y_all
        losses.append(0.5 * float((diff * diff).sum(axis=1).mean()))
        if epoch > 0 and abs(losses[-1] - losses[-2]) < config.loss_tolerance:
            stop = STOP_CONVERGED
            break

    trained = Network(hidden_weights=hw, hidden_biases=hb,
                      output_weights=ow, output_biases=ob)
    report = TrainReport(epochs_run=len(losses), loss_history=tuple(losses),
                         stop_reason=stop)
    return trained, report


def gradient_check(net: Network, x, d, epsilon: float = 1e-5) -> float:
    """Max relative error of analytic gradients against central differences.

    Every weight and bias is perturbed by +/- epsilon and the square error
    re-evaluated; the analytic gradient is compared entrywise. Denominators
    are floored at 1e-5 so that parameters whose true gradient is near zero
    are judged on the (noise-dominated) absolute scale instead of blowing up
    the ratio; with both gradients essentially zero the reported error is
    then the absolute difference relative to that floor.
    """
    if not 0.0 < epsilon <= 1e-3:
        raise ValueError(f"epsilon must be in (0, 1e-3], got {epsilon}")
    xa = np.asarray(x, dtype=float)
    da = np.asarray(d, dtype=float)
    analytic = _gradients(net, xa, da)
    arrays = [net.hidden_weights.copy(), net.hidden_biases.copy(),
              net.output_weights.copy(), net.output_biases.copy()]

    def loss_at(params):
        probe = Network(hidden_weights=params[0], hidden_biases=params[1],
                        output_weights=params[2], output_biases=params[3])
        _, y = forward(probe, xa)
        return loss(da, y)

    worst = 0.0
    for a_idx, grad in enumerate(analytic):
        flat = arrays[a_idx].reshape(-1)
        gflat = grad.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + epsilon
            up = loss_at(arrays)
            flat[i] = orig - epsilon
            down = loss_at(arrays)
            flat[i] = orig
            numeric = (up - down) / (2.0 * epsilon)
            denom = max(abs(gflat[i]), abs(numeric), _GRAD_DENOM_FLOOR)
            worst = max(worst, abs(gflat[i] - numeric) / denom)
    return worst


def save_model(net: Network, seed: int, path) -> None:
    """Write the plain-text model file.

    Line 1 is ``topology n_in n_hidden n_out``, line 2 ``seed <int>``, then
    one parameter per line with 17 significant digits (hidden weights
    row-major, hidden biases, output weights row-major, output biases).
    The format round-trips float64 values bit-exactly.
    """
    lines = [f"topology {net.n_input} {net.n_hidden} {net.n_output}", f"seed {int(seed)}"]
    for arr in (net.hidden_weights, net.hidden_biases, net.output_weights, net.output_biases):
        lines.extend(f"{v:.17g}" for v in arr.reshape(-1))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> tuple[Network, int]:
    """Read a model file written by save_model; returns (network, seed)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise InputOutputError(f"cannot read model file {path}: {exc}") from exc
    try:
        head = lines[0].split()
        if head[0] != "topology":
            raise ValueError("first line must start with 'topology'")
        ni, nh, no = (int(v) for v in head[1:4])
        seed_line = lines[1].split()
        if seed_line[0] != "seed":
            raise ValueError("second line must start with 'seed'")
        seed = int(seed_line[1])
        params = np.array([float(v) for v in lines[2:]], dtype=float)
    except (ValueError, IndexError) as exc:
        raise InputOutputError(f"malformed model file {path}: {exc}") from exc
    expected = nh * ni + nh + no * nh + no
    if params.size != expected:
        raise InputOutputError(
            f"model file {path} holds {params.size} parameters, expected {expected}")
    o = 0
    hw = params[o:o + nh * ni].reshape(nh, ni); o += nh * ni
    hb = params[o:o + nh]; o += nh
    ow = params[o:o + no * nh].reshape(no, nh); o += no * nh
    ob = params[o:o + no]
    net = Network(hidden_weights=hw, hidden_biases=hb, output_weights=ow, output_biases=ob)
    return net, seed
