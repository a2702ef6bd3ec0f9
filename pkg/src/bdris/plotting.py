"""Static SVG charts for sweeps and beam patterns (matplotlib, Agg backend)."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STYLE = {"reciprocal": dict(color="tab:blue", ls="--"), "non-reciprocal": dict(color="tab:red", ls="-")}
_PATTERNS = (("p_d_imp", "DL impinging"), ("p_d_ref", "DL reflected"),
             ("p_u_imp", "UL impinging"), ("p_u_ref", "UL reflected"))


def _svg(fig) -> str:
    buf = io.StringIO()
    with plt.rc_context({"svg.hashsalt": "bdris", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def sweep_svg(results, title: str = "", kind: str = "strength") -> str:
    if kind == "rate":
        panels = (("r_u", "Uplink rate [bit/s/Hz]"), ("r_d", "Downlink rate [bit/s/Hz]"))
    else:
        panels = (("p_u_norm", "Normalized uplink strength"), ("p_d_norm", "Normalized downlink strength"))
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    for ax, (col, label) in zip(axes, panels):
        for res in results:
            phi = res.column("phi_itu")
            ax.plot(np.degrees(phi), res.column(col), label=res.scheme, **_STYLE.get(res.scheme, {}))
        ax.set_xlabel("Uplink user angle $\\phi_{IT_U}$ [deg]")
        ax.set_ylabel(label)
        ax.set_xlim(0, 180)
        ax.grid(alpha=0.3)
        ax.legend()
    if title:
        fig.suptitle(title)
    return _svg(fig)


def beam_svg(studies, title: str = "") -> str:
    """Four panels: rows are the uplink-user angles, columns the two schemes."""
    angles = sorted({s.phi_itu for s in studies}, reverse=True)
    schemes = ["reciprocal", "non-reciprocal"]
    fig, axes = plt.subplots(len(angles), 2, figsize=(10, 3.5 * len(angles)),
                             squeeze=False, constrained_layout=True)
    for st in studies:
        ax = axes[angles.index(st.phi_itu), schemes.index(st.scheme)]
        deg = np.degrees(st.patterns.grid)
        for key, label in _PATTERNS:
            ax.plot(deg, getattr(st.patterns, key), label=label)
        cfg = st.cfg
        for phi, name in ((cfg.phi_bi, "BS"), (cfg.phi_rdi, "DL user"), (cfg.phi_itu, "UL user")):
            ax.axvline(np.degrees(phi), color="0.5", lw=0.8, ls=":")
            ax.annotate(name, (np.degrees(phi), 1.0), xycoords=("data", "axes fraction"),
                        ha="center", va="bottom", fontsize=8)
        ax.set_xlabel("Angle $\\phi$ [deg]")
        ax.set_ylabel("Normalized power")
        ax.set_xlim(0, 180)
        ax.set_title(f"{st.scheme}, $\\phi_{{IT_U}}$ = {np.degrees(st.phi_itu):.0f} deg", pad=14)
        ax.grid(alpha=0.3)
        ax.legend(fontsize=7)
    if title:
        fig.suptitle(title)
    return _svg(fig)
