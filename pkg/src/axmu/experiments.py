"""End-to-end runs: single analysis, simulation, sweeps, cross-validation, figure presets."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from . import model
from .config import FIELD_NAMES, WlanConfig, derive, parse_value
from .errors import ConfigError
from .sim import SimConfig, SimResult, run_replicated

CSV_COLUMNS = ("parameter", "value", "engine", "s_d", "s_u", "s_d_std", "s_u_std",
               "tau_ap", "tau_sta", "pc_ap", "pc_sta", "csi_factor")
ENGINES = {"analysis": ("analysis",), "sim": ("sim",), "simulation": ("sim",),
           "both": ("analysis", "sim")}


def analyze(config: WlanConfig) -> model.ThroughputReport:
    try:
        scen = derive(config)
        fp = model.solve_fixed_point(scen.contention)
        dist = model.slot_distribution(fp, scen.contention)
        return model.throughput(dist, scen.durations, config.t_e_us, config.l_d, scen.v_u,
                                scen.csi_factor, fp)
    except ConfigError as exc:
        raise ConfigError(f"{exc} [n={config.n}, b={config.b}, mcs={config.mcs}, "
                          f"amendment={config.amendment}]") from exc


def simulate(config: WlanConfig, seed: int = 0, reps: int = 20, sim_time_s: float = 10.0,
             jobs: int = 1) -> SimResult:
    return run_replicated(SimConfig(config, seed=seed, sim_time_s=sim_time_s,
                                    replications=reps, jobs=jobs))


# sweeps ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple
    overrides: dict = field(default_factory=dict)
    engines: str = "analysis"
    label: str = ""

    def __post_init__(self):
        if self.parameter not in FIELD_NAMES:
            raise ConfigError(f"unknown sweep parameter {self.parameter!r}; "
                              f"valid names: {', '.join(sorted(FIELD_NAMES))}")
        if not self.values:
            raise ConfigError("sweep value list is empty")
        if self.engines not in ENGINES:
            raise ConfigError(f"engines must be one of {sorted(ENGINES)}, got {self.engines!r}")
        unknown = set(self.overrides) - FIELD_NAMES
        if unknown:
            raise ConfigError(f"unknown override keys {sorted(unknown)}")


@dataclass
class SweepRow:
    parameter: str
    value: object
    engine: str
    result: object
    csi_factor: float

    def cells(self) -> dict:
        r = self.result
        if self.engine == "analysis":
            fp = r.fixed_point
            nums = (r.s_d, r.s_u, 0.0, 0.0, fp.tau_ap, fp.tau_sta, fp.pc_ap, fp.pc_sta)
        else:
            nums = (r.s_d_mean, r.s_u_mean, r.s_d_std, r.s_u_std,
                    r.tau_ap, r.tau_sta, r.pc_ap, r.pc_sta)
        row = dict(parameter=self.parameter, value=_fmt(self.value), engine=self.engine)
        row.update(zip(CSV_COLUMNS[3:], (_fmt(x) for x in (*nums, self.csi_factor))))
        return row


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float)):
        return f"{x:.6g}"
    return str(x)


def sweep(spec: SweepSpec, base: WlanConfig | None = None, *, seed: int = 0, reps: int = 20,
          sim_time_s: float = 10.0, jobs: int = 1) -> list[SweepRow]:
    base = (base or WlanConfig()).replace(**spec.overrides)
    rows = []
    for value in spec.values:
        if isinstance(value, str):
            value = parse_value(spec.parameter, value)
        config = base.replace(**{spec.parameter: value})
        csi = derive(config).csi_factor
        for engine in ENGINES[spec.engines]:
            if engine == "analysis":
                result = analyze(config)
            else:
                result = simulate(config, seed=seed, reps=reps, sim_time_s=sim_time_s, jobs=jobs)
            rows.append(SweepRow(spec.parameter, value, engine, result, csi))
    return rows


def to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


# validation -----------------------------------------------------------------

@dataclass
class ValidationReport:
    passed: bool
    tolerance: float
    analysis: model.ThroughputReport
    simulation: SimResult
    gap_d: float
    gap_u: float

    def lines(self) -> list[str]:
        a, s = self.analysis, self.simulation
        verdict = "PASS" if self.passed else "FAIL"
        return [
            f"S_d analysis={a.s_d:.4f} sim={s.s_d_mean:.4f} (std {s.s_d_std:.4f}) gap={self.gap_d:.4%}",
            f"S_u analysis={a.s_u:.4f} sim={s.s_u_mean:.4f} (std {s.s_u_std:.4f}) gap={self.gap_u:.4%}",
            f"{verdict} at tolerance {self.tolerance:.4%}",
        ]


def relative_gap(reference: float, value: float) -> float:
    if reference == 0:
        return 0.0 if value == 0 else math.inf
    return abs(value - reference) / abs(reference)


def validate(config: WlanConfig, tolerance: float = 0.03, *, seed: int = 0, reps: int = 20,
             sim_time_s: float = 10.0, jobs: int = 1) -> ValidationReport:
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    ana = analyze(config)
    sim = simulate(config, seed=seed, reps=reps, sim_time_s=sim_time_s, jobs=jobs)
    gap_d = relative_gap(ana.s_d, sim.s_d_mean)
    gap_u = relative_gap(ana.s_u, sim.s_u_mean)
    return ValidationReport(gap_d <= tolerance and gap_u <= tolerance, tolerance, ana, sim,
                            gap_d, gap_u)


# figure presets -------------------------------------------------------------

_AC = dict(amendment="ac", beta=1.0, max_ampdu=64, sigma_us=4.0)
_N_GRID = (1, 2, 4, 8, 12, 16, 24, 32, 40, 48, 56, 64)
_AMPDU_GRID = (1, 2, 4, 8, 16, 32, 64, 128, 256)
_CW_GRID = (15, 31, 63, 127, 255, 511, 1023)


@dataclass(frozen=True)
class Preset:
    description: str
    series: tuple


PRESETS = {
    "fig3a": Preset("DL/UL throughput vs number of stations, 11ax and 11ac, with and without sounding", (
        SweepSpec("n", _N_GRID, {}, label="ax"),
        SweepSpec("n", _N_GRID, {"lambda_csi": 0.0}, label="ax-nocsi"),
        SweepSpec("n", _N_GRID, dict(_AC), label="ac"),
        SweepSpec("n", _N_GRID, dict(_AC, lambda_csi=0.0), label="ac-nocsi"),
    )),
    "fig3b": Preset("AP-only (no contention, no sounding) DL throughput per MCS", tuple(
        SweepSpec("mcs", tuple(range(12)), dict(base, ap_only=True, lambda_csi=0.0, max_ampdu=na),
                  label=f"{name}-na{na}")
        for name, base in (("su", dict(n=0, alpha=1.0)), ("mu", dict(n=64, alpha=0.0, beta=1.0)))
        for na in (1, 64, 256)
    )),
    "fig4a": Preset("effect of alpha (share of SU AP accesses)", tuple(
        SweepSpec("alpha", (0.0, 0.2, 0.4, 0.6, 0.8, 1.0), {"n": n}, label=f"n{n}") for n in (4, 16, 64)
    )),
    "fig4b": Preset("effect of beta (share of DL among MU accesses)", tuple(
        SweepSpec("beta", (0.0, 0.2, 0.4, 0.6, 0.8, 1.0), {"n": n}, label=f"n{n}") for n in (4, 16, 64)
    )),
    "fig5": Preset("effect of the sounding rate", tuple(
        SweepSpec("lambda_csi", (0.0, 10.0, 20.0, 50.0, 100.0, 200.0), {"n": n}, label=f"n{n}")
        for n in (8, 32, 64)
    )),
    "fig6": Preset("effect of the maximum A-MPDU size at 80 MHz", tuple(
        SweepSpec("max_ampdu", _AMPDU_GRID, {"n": n, "b": 80}, label=f"n{n}") for n in (8, 64)
    )),
    "fig7": Preset("effect of the channel width, N=32", tuple(
        SweepSpec("b", (20, 40, 80, 160), {"n": 32, "max_ampdu": na}, label=f"ampdu{na}") for na in (64, 256)
    )),
    "fig8": Preset("effect of AP antennas, N=32", tuple(
        SweepSpec("m_ap", tuple(range(4, 9)), {"n": 32, "b": b}, label=f"b{b}") for b in (20, 40, 80, 160)
    )),
    "fig9a": Preset("effect of station CW_min, alpha=0.2 beta=0.8", tuple(
        SweepSpec("cw_min_sta", _CW_GRID, {"n": n, "alpha": 0.2, "beta": 0.8}, label=f"n{n}") for n in (8, 32, 64)
    )),
    "fig9b": Preset("effect of station CW_min, alpha=0.2 beta=0.2", tuple(
        SweepSpec("cw_min_sta", _CW_GRID, {"n": n, "alpha": 0.2, "beta": 0.2}, label=f"n{n}") for n in (8, 32, 64)
    )),
}


def run_preset(name: str, engines: str = "analysis", **kwargs) -> dict[str, list[SweepRow]]:
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
    out = {}
    for spec in preset.series:
        spec = SweepSpec(spec.parameter, spec.values, spec.overrides, engines, spec.label)
        out[spec.label] = sweep(spec, **kwargs)
    return out
