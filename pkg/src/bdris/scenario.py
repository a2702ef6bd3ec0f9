"""Scenario configuration, figure presets, sweeps and result files.

A configuration file is a flat TOML document whose keys are the
:class:`~bdris.channels.ScenarioConfig` field names. Noise powers may also be
given in dBm through ``sigma_d2_dbm`` / ``sigma_u2_dbm``. Unknown keys are an
error.

Presets pin the geometry, RIS size and design/evaluation modes of one figure
of the case study; the link budget and sweep resolution still come from the
configuration.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channels import ScenarioConfig, build_channels, dbm_to_watt
from .errors import BdrisError, ConfigError
from .metrics import BeamPatternSet, beam_patterns, rates
from .optimizers import (build_projection_targets, nonreciprocal_design, projection_diagnostics,
                         reciprocal_design)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

RECIPROCAL = "reciprocal"
NON_RECIPROCAL = "non-reciprocal"
SCHEMES = (RECIPROCAL, NON_RECIPROCAL)

CSV_HEADER = ["scheme", "design_ss", "eval_ss", "phi_itu", "p_u_norm", "p_d_norm",
              "r_u", "r_d", "residual", "sigma_trace"]
BEAM_CSV_HEADER = ["scheme", "design_ss", "eval_ss", "phi_itu", "phi",
                   "p_d_imp", "p_d_ref", "p_u_imp", "p_u_ref"]

_DBM_ALIASES = {"sigma_d2_dbm": "sigma_d2", "sigma_u2_dbm": "sigma_u2"}


class OutputError(BdrisError, OSError):
    category = "io"


def parse_config(path: str | os.PathLike | None) -> ScenarioConfig:
    """Read a scenario file; missing keys keep their default values.

    ``None`` returns the default scenario.
    """
    if path is None:
        return ScenarioConfig()
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return config_from_mapping(raw, source=str(path))


def config_from_mapping(raw: dict, source: str = "<mapping>") -> ScenarioConfig:
    fields = {f.name: f for f in dataclasses.fields(ScenarioConfig)}
    kwargs = {}
    for key, value in raw.items():
        if key in _DBM_ALIASES:
            target = _DBM_ALIASES[key]
            if target in raw:
                raise ConfigError(f"{source}: both {key} and {target} given")
            kwargs[target] = dbm_to_watt(_number(value, key, source))
            continue
        if key not in fields:
            raise ConfigError(f"{source}: unknown key {key!r}")
        default = fields[key].default
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise ConfigError(f"{source}: {key} must be true or false")
            kwargs[key] = value
        elif isinstance(default, int):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{source}: {key} must be an integer")
            kwargs[key] = value
        else:
            kwargs[key] = _number(value, key, source)
    return ScenarioConfig(**kwargs)


def _number(value, key: str, source: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{source}: {key} must be a number")
    return float(value)


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str  # "beam", "strength" or "rate"
    design_ss: bool
    eval_ss: bool
    phi_rdi: float
    n_i: int
    phi_bi: float = np.pi / 6
    beam_phi_itu: tuple[float, ...] = ()
    title: str = ""

    def apply(self, cfg: ScenarioConfig) -> ScenarioConfig:
        return dataclasses.replace(cfg, phi_bi=self.phi_bi, phi_rdi=self.phi_rdi, n_i=self.n_i,
                                   design_with_ss=self.design_ss, eval_with_ss=self.eval_ss)


def _presets() -> dict[str, Preset]:
    pi = np.pi
    beams = (2 * pi / 3, pi / 2)
    out = [
        Preset("fig4", "beam", False, False, pi / 2, 16, beam_phi_itu=beams,
               title="Beam patterns without structural scattering"),
        Preset("fig5", "beam", True, True, pi / 2, 16, beam_phi_itu=beams,
               title="Beam patterns with structural scattering"),
        Preset("fig6", "strength", False, False, pi / 2, 64,
               title="Normalized channel strength without structural scattering"),
    ]
    for suffix, phi_rdi in (("a", pi / 2), ("b", 5 * pi / 6)):
        out += [
            Preset("fig7" + suffix, "strength", True, True, phi_rdi, 64,
                   title="Normalized channel strength with structural scattering"),
            Preset("fig8" + suffix, "strength", False, True, phi_rdi, 64,
                   title="Normalized channel strength, designed without and evaluated with structural scattering"),
            Preset("fig10" + suffix, "rate", True, True, phi_rdi, 64,
                   title="Rates with structural scattering"),
            Preset("fig11" + suffix, "rate", False, True, phi_rdi, 64,
                   title="Rates, designed without and evaluated with structural scattering"),
        ]
    out.append(Preset("fig9", "rate", False, False, pi / 2, 64, title="Rates without structural scattering"))
    return {p.name: p for p in sorted(out, key=lambda p: (len(p.name), p.name))}


PRESETS = _presets()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


@dataclass
class SweepResult:
    scheme: str
    design_with_ss: bool
    eval_with_ss: bool
    rows: list[tuple[float, ...]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        idx = CSV_HEADER.index(name) - 3
        return np.array([row[idx] for row in self.rows])


def design(ch, cfg: ScenarioConfig, scheme: str, with_ss: bool):
    if scheme == RECIPROCAL:
        return reciprocal_design(ch, cfg.phi_bi, cfg.phi_itu, with_ss)
    if scheme == NON_RECIPROCAL:
        return nonreciprocal_design(ch, with_ss)
    raise ValueError(f"unknown scheme {scheme!r}")


def evaluate_point(cfg: ScenarioConfig, schemes=SCHEMES) -> dict[str, tuple[float, ...]]:
    """Design every scheme at ``cfg.phi_itu`` and return one CSV row tail per scheme."""
    ch = build_channels(cfg)
    targets = build_projection_targets(ch, cfg.design_with_ss)
    out = {}
    for scheme in schemes:
        sol = design(ch, cfg, scheme, cfg.design_with_ss)
        lm = rates(ch, sol.theta, cfg, cfg.eval_with_ss)
        diag = sol.diagnostics or projection_diagnostics(targets, sol.theta)
        out[scheme] = (cfg.phi_itu, lm.p_u_norm, lm.p_d_norm, lm.r_u, lm.r_d, diag.residual, diag.sigma_trace)
    return out


def run_sweep(cfg: ScenarioConfig, preset: str | Preset | None = None, schemes=SCHEMES,
              grid: np.ndarray | None = None) -> list[SweepResult]:
    """Sweep the uplink user angle over ``[0, pi]`` and collect metrics per scheme.

    The reciprocal RIS is always designed for the uplink. Rows are in
    ascending ``phi_itu`` order.
    """
    if preset is not None:
        p = get_preset(preset) if isinstance(preset, str) else preset
        if p.kind == "beam":
            raise ConfigError(f"preset {p.name} is a beam-pattern preset; use beam_study")
        cfg = p.apply(cfg)
    grid = cfg.grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
    results = {s: SweepResult(s, cfg.design_with_ss, cfg.eval_with_ss) for s in schemes}
    for phi in grid:
        point = evaluate_point(dataclasses.replace(cfg, phi_itu=float(phi)), schemes)
        for s in schemes:
            results[s].rows.append(point[s])
    return [results[s] for s in schemes]


@dataclass
class BeamStudy:
    scheme: str
    design_with_ss: bool
    eval_with_ss: bool
    phi_itu: float
    patterns: BeamPatternSet
    cfg: ScenarioConfig


def beam_study(cfg: ScenarioConfig, preset: str | Preset, grid: np.ndarray | None = None) -> list[BeamStudy]:
    """Beam patterns of both schemes for each uplink-user angle of a beam preset."""
    p = get_preset(preset) if isinstance(preset, str) else preset
    if p.kind != "beam":
        raise ConfigError(f"preset {p.name} is not a beam-pattern preset")
    cfg = p.apply(cfg)
    grid = cfg.grid() if grid is None else np.asarray(grid, dtype=float)
    out = []
    for phi_itu in p.beam_phi_itu:
        c = dataclasses.replace(cfg, phi_itu=phi_itu)
        ch = build_channels(c)
        for scheme in SCHEMES:
            sol = design(ch, c, scheme, c.design_with_ss)
            out.append(BeamStudy(scheme, c.design_with_ss, c.eval_with_ss, phi_itu,
                                 beam_patterns(ch, sol.theta, c.eval_with_ss, grid), c))
    return out


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def sweep_csv_text(results: list[SweepResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for res in results:
        for row in res.rows:
            w.writerow([res.scheme, _flag(res.design_with_ss), _flag(res.eval_with_ss), *map(_fmt, row)])
    return buf.getvalue()


def beam_csv_text(studies: list[BeamStudy]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BEAM_CSV_HEADER)
    for st in studies:
        bp = st.patterns
        for k, phi in enumerate(bp.grid):
            w.writerow([st.scheme, _flag(st.design_with_ss), _flag(st.eval_with_ss), _fmt(st.phi_itu), _fmt(phi),
                        _fmt(bp.p_d_imp[k]), _fmt(bp.p_d_ref[k]), _fmt(bp.p_u_imp[k]), _fmt(bp.p_u_ref[k])])
    return buf.getvalue()


def _write(path, text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from None
    return path


def emit_csv(results, path) -> Path:
    """Write sweep results (or beam studies) as CSV with full double precision."""
    if not results:
        raise ValueError("nothing to write")
    text = beam_csv_text(results) if isinstance(results[0], BeamStudy) else sweep_csv_text(results)
    return _write(path, text)


def emit_svg(results, path, title: str = "", kind: str = "strength") -> Path:
    """Write line charts of sweep results or beam studies as a static SVG.

    For sweeps, ``kind`` selects the plotted quantities: ``"strength"`` for
    the normalized channel strengths, ``"rate"`` for the achievable rates.
    """
    if not results:
        raise ValueError("nothing to write")
    from . import plotting

    if isinstance(results[0], BeamStudy):
        text = plotting.beam_svg(results, title)
    else:
        text = plotting.sweep_svg(results, title, kind)
    return _write(path, text)


def run_preset(name: str, cfg: ScenarioConfig, out_dir, fmt: str = "both") -> list[Path]:
    """Compute a preset and write ``<name>.csv`` and/or ``<name>.svg`` into ``out_dir``."""
    p = get_preset(name)
    results = beam_study(cfg, p) if p.kind == "beam" else run_sweep(cfg, p)
    written = []
    if fmt in ("csv", "both"):
        written.append(emit_csv(results, Path(out_dir) / f"{name}.csv"))
    if fmt in ("svg", "both"):
        written.append(emit_svg(results, Path(out_dir) / f"{name}.svg", p.title, p.kind))
    return written
