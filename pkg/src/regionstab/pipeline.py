"""End-to-end pipeline commands shared by the CLI and the demo scripts.

Each cmd_* function takes already-loaded records plus a PipelineConfig,
writes its artifacts under ``out_dir``, and returns the computed objects.
Reports never embed timestamps or absolute paths, so a rerun with the
same inputs and seed reproduces every artifact byte for byte.
"""

from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateKeyError,
    InputOutputError,
    InsufficientHistoryError,
    MissingColumnError,
    ModelMissingError,
    ParseError,
    TooFewRecordsError,
    ZeroVarianceError,
)
from .forecast import DEFAULT_HORIZON, DEFAULT_MIN_ABS_R, TimeSeries, forecast_series
from .ingest import SEVEN_INDEXES, TRAINING_INDEXES, preprocess, records_to_matrix
from .network import NetworkConfig, forward, load_model, save_model, train
from .pca import INDEX_SELECTION, PROJECTION, contribution_rates, run_pca, select_components
from .stability import normalize_labels, rs_transform
from .numerics import standardize


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the five pipeline commands; defaults mirror the method."""

    pca_threshold: float = 0.95
    pca_mode: str = INDEX_SELECTION
    outlier_z_cutoff: float = 4.0
    drop_outliers: bool = False
    network: NetworkConfig = field(default_factory=NetworkConfig)
    label_min: float = 0.0
    label_max: float = 120.0
    forecast_horizon: int = DEFAULT_HORIZON
    relativity_min_abs_r: float = DEFAULT_MIN_ABS_R


# Flat config-file keys. Network keys are folded into the nested
# NetworkConfig; topology stays 5-10-1 apart from the hidden width.
_NETWORK_KEYS = {
    "n_hidden": int,
    "learning_rate": float,
    "max_epochs": int,
    "loss_tolerance": float,
    "rng_seed": int,
}
_PIPELINE_KEYS = {
    "pca_threshold": float,
    "pca_mode": str,
    "outlier_z_cutoff": float,
    "drop_outliers": bool,
    "label_min": float,
    "label_max": float,
    "forecast_horizon": int,
    "relativity_min_abs_r": float,
}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` config file; ``#`` starts a comment."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InputOutputError(f"cannot read config file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, "config", "expected 'key = value'")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        caster = _NETWORK_KEYS.get(key) or _PIPELINE_KEYS.get(key)
        if caster is None:
            raise ParseError(lineno, key, "unknown configuration key")
        if caster is bool:
            caster = _parse_bool
        try:
            values[key] = caster(text)
        except ValueError as exc:
            raise ParseError(lineno, key, str(exc)) from exc
    return values


def make_config(values=None, **overrides) -> PipelineConfig:
    """Build a PipelineConfig from flat key/value overrides.

    ``values`` usually comes from read_config_file; keyword overrides (CLI
    flags) win over file values. Unknown keys are rejected.
    """
    merged = dict(values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    net_kwargs = {k: merged.pop(k) for k in list(merged) if k in _NETWORK_KEYS}
    unknown = set(merged) - set(_PIPELINE_KEYS)
    if unknown:
        raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
    if merged.get("pca_mode") not in (None, INDEX_SELECTION, PROJECTION):
        raise ValueError(f"pca_mode must be {INDEX_SELECTION!r} or {PROJECTION!r}")
    network = replace(NetworkConfig(), **net_kwargs)
    return PipelineConfig(network=network, **merged)


# --- shared formatting ------------------------------------------------------

def _fmt_pct(x: float) -> str:
    return f"{100.0 * x:.2f}%"


def _fmt_r(x: float) -> str:
    return f"{x:.4f}"


def _slug(country: str) -> str:
    return country.strip().lower().replace(" ", "_")


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputOutputError(f"cannot write {path}: {exc}") from exc


def _outdir(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputOutputError(f"cannot create output directory {out}: {exc}") from exc
    return out


def _group_by_country(records) -> dict:
    seen = set()
    for rec in records:
        key = (rec.country, rec.year)
        if key in seen:
            raise DuplicateKeyError(rec.country, rec.year)
        seen.add(key)
    groups = {}
    for rec in sorted(records, key=lambda r: (r.country, r.year)):
        groups.setdefault(rec.country, []).append(rec)
    return groups


def _index_codes_present(records) -> tuple:
    """Index codes populated on every record, in schema order."""
    recs = list(records)
    codes = tuple(code for code in SEVEN_INDEXES
                  if all(rec.index_value(code) is not None for rec in recs))
    if not codes:
        raise MissingColumnError("lap_mm")
    return codes


def _pca_table(names, eigenvalues, cr, acc, k) -> list:
    lines = ["rank  index  eigenvalue  contribution  accumulated"]
    for i, name in enumerate(names):
        lines.append(f"{i + 1:>4}  {name:<5}  {eigenvalues[i]:>10.4f}"
                     f"  {_fmt_pct(cr[i]):>12}  {_fmt_pct(acc[i]):>11}")
    lines.append("")
    lines.append(f"selected k = {k}: {', '.join(names[:k])}")
    return lines


# --- commands ---------------------------------------------------------------

def cmd_pca(config: PipelineConfig, out_dir, records=None, eigenvalues=None):
    """Contribution-rate analysis; writes pca_report.txt.

    Either analyse loaded records (standardize, correlate, eigensolve) or,
    when ``eigenvalues`` is given, score a supplied spectrum directly.
    Returns (PcaResult or None, report text).
    """
    if records is None and eigenvalues is None:
        raise ValueError("cmd_pca needs records or an eigenvalue spectrum")
    out = _outdir(out_dir)

    lines = ["principal component analysis"]
    flagged = []
    if eigenvalues is not None:
        w = np.asarray(list(eigenvalues), dtype=float)
        cr, acc = contribution_rates(w)
        k = select_components(acc, config.pca_threshold)
        names = tuple(f"PC{i + 1}" for i in range(w.size))
        result = None
        lines.append("mode: supplied eigenvalues")
    else:
        clean, flagged = preprocess(records, config.outlier_z_cutoff,
                                    config.drop_outliers)
        X = records_to_matrix(clean, _index_codes_present(clean))
        result, _ = run_pca(X, config.pca_threshold, config.pca_mode)
        w = result.eigenvalues
        cr = result.contribution_rates
        acc = result.accumulated_rates
        k = result.selected_k
        names = result.ranked_indexes
        lines.append(f"mode: {config.pca_mode}")
    lines.append(f"threshold: {_fmt_pct(config.pca_threshold)}")
    if flagged:
        what = "dropped" if config.drop_outliers else "kept"
        lines.append(f"outliers flagged: {len(flagged)} ({what})")
    lines.append("")
    lines.extend(_pca_table(names, w, cr, acc, k))
    report = "\n".join(lines) + "\n"
    _write_text(out / "pca_report.txt", report)
    return result, report


def cmd_train(records, config: PipelineConfig, out_dir, model_path=None):
    """Train the 5-10-1 network on the five climate/government indexes.

    Labels come from the ``fsi`` column, normalized onto [0, 100] and scaled
    to (0, 1) targets. Writes the model file, a scaler sidecar holding the
    feature means/stds needed at scoring time, and train_report.txt.
    Returns (network, train report, model path).
    """
    recs = list(records)
    if any(rec.fsi_label is None for rec in recs):
        raise MissingColumnError("fsi")
    clean, flagged = preprocess(recs, config.outlier_z_cutoff, config.drop_outliers)

    X = records_to_matrix(clean, TRAINING_INDEXES)
    Z, stats = standardize(X)
    raw = [rec.fsi_label for rec in clean]
    labels = normalize_labels(raw, config.label_min, config.label_max) / 100.0

    net_cfg = replace(config.network, n_input=len(TRAINING_INDEXES), n_output=1)
    net, report = train(net_cfg, Z.values, labels.reshape(-1, 1))

    out = _outdir(out_dir)
    model_path = Path(model_path) if model_path is not None else out / "model.txt"
    save_model(net, net_cfg.rng_seed, model_path)
    _save_scaler(_scaler_path(model_path), TRAINING_INDEXES,
                 stats.means, np.sqrt(stats.sample_variances))

    lines = [
        "training report",
        f"samples: {len(clean)}",
        f"inputs: {', '.join(TRAINING_INDEXES)} (standardized)",
        f"topology: {net_cfg.n_input}-{net_cfg.n_hidden}-{net_cfg.n_output}",
        f"seed: {net_cfg.rng_seed}",
        f"epochs run: {report.epochs_run}",
        f"stop reason: {report.stop_reason}",
        f"final loss: {report.loss_history[-1]:.6g}",
        f"model: {model_path.name}",
    ]
    if flagged:
        what = "dropped" if config.drop_outliers else "kept"
        lines.insert(2, f"outliers flagged: {len(flagged)} ({what})")
    _write_text(out / "train_report.txt", "\n".join(lines) + "\n")
    return net, report, model_path


def _scaler_path(model_path) -> Path:
    return Path(str(model_path) + ".scaler")


def _save_scaler(path, names, means, stds) -> None:
    lines = ["columns " + " ".join(names),
             "means " + " ".join(f"{v:.17g}" for v in means),
             "stds " + " ".join(f"{v:.17g}" for v in stds)]
    _write_text(path, "\n".join(lines) + "\n")


def _load_scaler(path):
    p = Path(path)
    if not p.exists():
        raise ModelMissingError(
            f"scaler sidecar {p} not found; train writes it next to the model")
    try:
        with open(p, "r", encoding="utf-8") as fh:
            rows = [ln.split() for ln in fh if ln.strip()]
        head = {row[0]: row[1:] for row in rows}
        names = tuple(head["columns"])
        means = np.array([float(v) for v in head["means"]], dtype=float)
        stds = np.array([float(v) for v in head["stds"]], dtype=float)
    except (OSError, KeyError, ValueError, IndexError) as exc:
        raise InputOutputError(f"malformed scaler file {p}: {exc}") from exc
    if not (len(names) == means.size == stds.size) or (stds <= 0).any():
        raise InputOutputError(f"malformed scaler file {p}: inconsistent entries")
    return names, means, stds


def _load_model_and_scaler(model_path):
    p = Path(model_path)
    if not p.exists():
        raise ModelMissingError(f"model file {p} not found")
    net, seed = load_model(p)
    names, means, stds = _load_scaler(_scaler_path(p))
    if net.n_input != len(names):
        raise DimensionMismatchError(
            f"model expects {net.n_input} inputs but scaler lists {len(names)} columns")
    return net, seed, names, means, stds


def _score_records(records, model_path) -> list:
    """(record, RsScore) pairs sorted by (country, year)."""
    net, _, names, means, stds = _load_model_and_scaler(model_path)
    scored = []
    for rec in sorted(records, key=lambda r: (r.country, r.year)):
        vals = []
        for code in names:
            v = rec.index_value(code)
            if v is None:
                raise MissingColumnError(code.lower())
            vals.append(v)
        x = (np.array(vals, dtype=float) - means) / stds
        _, y = forward(net, x)
        scored.append((rec, rs_transform(100.0 * float(y[0]))))
    return scored


def cmd_score(records, config: PipelineConfig, model_path, out_dir) -> list:
    """Score records with a trained model; writes scores.csv.

    Each record's five indexes are standardized with the scaler saved at
    training time, pushed through the network, and mapped to RS. Returns
    the (record, RsScore) pairs sorted by (country, year).
    """
    scored = _score_records(records, model_path)
    out = _outdir(out_dir)
    lines = ["country,year,bpnn_output,rs,category"]
    for rec, score in scored:
        lines.append(f"{rec.country},{rec.year},{score.bpnn_output:.4f},"
                     f"{score.value:.4f},{score.category.value}")
    _write_text(out / "scores.csv", "\n".join(lines) + "\n")
    return scored


def _rs_series(records, model_path) -> dict:
    """Per-country RS TimeSeries, scored when a model is given."""
    groups = _group_by_country(records)
    if model_path is not None:
        rs_by_key = {(rec.country, rec.year): score.value
                     for rec, score in _score_records(records, model_path)}
    else:
        missing = [rec for rec in records if rec.rs is None]
        if missing:
            raise MissingColumnError("rs")
        rs_by_key = {(rec.country, rec.year): rec.rs for rec in records}

    series = {}
    for country, recs in groups.items():
        if len(recs) < 3:
            raise InsufficientHistoryError(
                f"{country}: {len(recs)} observations, need >= 3 to fit a trend")
        series[country] = TimeSeries(
            years=tuple(rec.year for rec in recs),
            values=tuple(rs_by_key[(rec.country, rec.year)] for rec in recs))
    return series


def cmd_forecast(records, config: PipelineConfig, out_dir, model_path=None) -> dict:
    """Per-country OLS trend on RS; writes forecast_report.txt, predictions.csv.

    RS comes from the records' ``rs`` column, or from scoring them when a
    model path is given. A failed linearity gate (|r| below the threshold)
    is flagged in the report but does not abort the forecast.
    Returns {country: ForecastResult}.
    """
    if int(config.forecast_horizon) < 1:
        raise ValueError(f"forecast horizon must be >= 1, got {config.forecast_horizon}")
    series = _rs_series(records, model_path)
    results = {country: forecast_series(ts, config.relativity_min_abs_r,
                                        config.forecast_horizon)
               for country, ts in series.items()}

    out = _outdir(out_dir)
    lines = ["forecast report",
             f"horizon: {int(config.forecast_horizon)} years",
             f"linearity gate: |r| >= {_fmt_r(config.relativity_min_abs_r)}"]
    csv_lines = ["country,year,rs"]
    for country, res in results.items():
        ts = series[country]
        gate = "pass" if res.relativity_pass else "FAIL (trend not reliable)"
        lines.append("")
        lines.append(f"country: {country}")
        lines.append(f"  observations: {len(ts.years)} ({ts.years[0]} to {ts.years[-1]})")
        lines.append(f"  fit: rs = {res.fit.slope:.6g} * year + {res.fit.intercept:.6g}")
        lines.append(f"  relativity: r = {_fmt_r(res.relativity_r)} ({gate})")
        for year, value in res.predictions:
            lines.append(f"  {year}: {value:.4f}")
            csv_lines.append(f"{country},{year},{value:.4f}")
    _write_text(out / "forecast_report.txt", "\n".join(lines) + "\n")
    _write_text(out / "predictions.csv", "\n".join(csv_lines) + "\n")
    return results


def cmd_report(records, config: PipelineConfig, out_dir, model_path=None) -> str:
    """Combined run report plus per-country plot-data files.

    Writes report.txt and, when RS values are available (rs column or
    model), ``<country>.dat`` with the observed series and
    ``<country>_forecast.dat`` with the predicted points, both as plain
    two-column ``year value`` text for plotting.
    """
    recs = list(records)
    out = _outdir(out_dir)
    groups = _group_by_country(recs)

    lines = ["regional stability report", ""]
    lines.append(f"records: {len(recs)}")
    for country, group in groups.items():
        lines.append(f"  {country}: {len(group)} rows, {group[0].year} to {group[-1].year}")

    lines.append("")
    try:
        clean, flagged = preprocess(recs, config.outlier_z_cutoff, config.drop_outliers)
    except TooFewRecordsError:
        clean, flagged = recs, []
        lines.append("outlier screen: skipped (fewer than 3 records)")
    else:
        if flagged:
            what = "dropped" if config.drop_outliers else "kept"
            lines.append(f"outlier screen (|z| > {config.outlier_z_cutoff:g}): "
                         f"{len(flagged)} flagged ({what})")
            for rec in flagged:
                lines.append(f"  {rec.country} {rec.year}")
        else:
            lines.append(f"outlier screen (|z| > {config.outlier_z_cutoff:g}): none flagged")

    lines.append("")
    try:
        X = records_to_matrix(clean, _index_codes_present(clean))
        result, _ = run_pca(X, config.pca_threshold, config.pca_mode)
        lines.extend(_pca_table(result.ranked_indexes, result.eigenvalues,
                                result.contribution_rates,
                                result.accumulated_rates, result.selected_k))
    except (MissingColumnError, ZeroVarianceError, TooFewRecordsError) as exc:
        lines.append(f"pca: skipped ({exc})")

    if model_path is not None:
        lines.append("")
        lines.append("scores")
        for rec, score in _score_records(recs, model_path):
            lines.append(f"  {rec.country} {rec.year}: rs = {score.value:.4f}"
                         f" ({score.category.value})")

    lines.append("")
    have_rs = all(rec.rs is not None for rec in recs)
    if have_rs or model_path is not None:
        series = _rs_series(recs, model_path)
        for country, ts in series.items():
            res = forecast_series(ts, config.relativity_min_abs_r,
                                  config.forecast_horizon)
            gate = "pass" if res.relativity_pass else "FAIL (trend not reliable)"
            lines.append(f"forecast {country}: r = {_fmt_r(res.relativity_r)} ({gate}), "
                         f"slope {res.fit.slope:.6g} per year")
            for year, value in res.predictions:
                lines.append(f"  {year}: {value:.4f}")
            observed = "\n".join(f"{y} {v:.6g}" for y, v in zip(ts.years, ts.values))
            predicted = "\n".join(f"{y} {v:.6g}" for y, v in res.predictions)
            _write_text(out / f"{_slug(country)}.dat", observed + "\n")
            _write_text(out / f"{_slug(country)}_forecast.dat", predicted + "\n")
    else:
        lines.append("forecast: skipped (no rs column and no model)")

    report = "\n".join(lines) + "\n"
    _write_text(out / "report.txt", report)
    return report
