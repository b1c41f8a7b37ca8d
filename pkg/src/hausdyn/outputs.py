"""CSV and SVG writers for impulse responses, sweeps and simulations."""
from __future__ import annotations

import csv
from pathlib import Path

from matplotlib.figure import Figure

from hausdyn.errors import OutputError
from hausdyn.simulation import ImpulseResponse, SimulatedPaths, SweepResult


def fmt(x: float) -> str:
    # +0.0 folds negative zero
    return f"{float(x) + 0.0:.12g}"


def _write_rows(path, header, rows):
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OutputError(path, exc) from exc
    return path


def _irf_rows(irf: ImpulseResponse, prefix=()):
    for t in range(irf.horizon):
        yield [*prefix, str(t), fmt(irf.q_hat[t]), fmt(irf.h_hat[t]), fmt(irf.x_hat[t])]


def emit_csv(result, path) -> Path:
    """Write an ImpulseResponse, SweepResult or SimulatedPaths as CSV.

    One row per period after a header.  Sweep files are long-format with
    ``tau_s, tau_f`` leading each row.  Numbers carry 12 significant digits,
    so identical results give byte-identical files.
    """
    if isinstance(result, ImpulseResponse):
        return _write_rows(path, ["period", "q_hat", "h_hat", "x_hat"], _irf_rows(result))
    if isinstance(result, SweepResult):
        rows = (
            row
            for tax, irf in result.entries
            for row in _irf_rows(irf, (fmt(tax.tau_s), fmt(tax.tau_f)))
        )
        return _write_rows(path, ["tau_s", "tau_f", "period", "q_hat", "h_hat", "x_hat"], rows)
    if isinstance(result, SimulatedPaths):
        rows = (
            [str(t), fmt(q), fmt(h), fmt(R), fmt(n)]
            for t, (q, h, R, n) in enumerate(
                zip(result.q_hat, result.h_hat, result.R_hat, result.n_hat)
            )
        )
        return _write_rows(path, ["period", "q_hat", "h_hat", "R_hat", "n_hat"], rows)
    raise TypeError(f"cannot write {type(result).__name__} as CSV")


def emit_key_values(values: dict, path) -> Path:
    return _write_rows(path, ["name", "value"], ([k, fmt(v)] for k, v in values.items()))


def legend_label(sweep: SweepResult, tax) -> str:
    varies = sweep.experiment.varies
    if varies == "tau_s":
        return f"τ_s={tax.tau_s:g}"
    if varies == "tau_f":
        return f"τ_f={tax.tau_f:g}"
    return f"τ_s=τ_f={tax.tau_s:g}"


_TITLES = {
    "interest-rate": "Responses of housing price to interest rate shock",
    "population-growth": "Responses of housing price to population growth shock",
}


def render_plot(sweep: SweepResult, path) -> Path:
    """Render one line per grid point to a standalone SVG file.

    Text is kept as SVG text elements, and each line carries the id
    ``irf-<index>``.
    """
    import matplotlib

    path = Path(path)
    with matplotlib.rc_context({"svg.fonttype": "none", "svg.hashsalt": "hausdyn"}):
        fig = Figure(figsize=(6.4, 4.0))
        ax = fig.add_subplot()
        for i, (tax, irf) in enumerate(sweep.entries):
            (line,) = ax.plot(range(irf.horizon), irf.q_hat, label=legend_label(sweep, tax))
            line.set_gid(f"irf-{i}")
        ax.axhline(0.0, color="0.6", linewidth=0.6)
        ax.set_xlabel("periods")
        ax.set_ylabel("log deviation of q")
        ax.set_title(f"{_TITLES[sweep.experiment.shock.value]} ({sweep.experiment.value})")
        ax.legend()
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise OutputError(path, exc) from exc
    return path
