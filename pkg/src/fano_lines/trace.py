"""Traceability from the mathematical statements to the report checks.

``python -m fano_lines.trace`` rewrites ``docs/traceability.md``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

DOC = Path(__file__).resolve().parents[2] / "docs" / "traceability.md"

ALL = ("FX-N1", "FX-N2", "FX-C1", "FX-C2")
NODAL = ("FX-N1", "FX-N2")
CUSP = ("FX-C1", "FX-C2")


@dataclass(frozen=True)
class TraceEntry:
    anchor: str
    quote: str
    checks: tuple[str, ...]
    fixtures: tuple[str, ...]


ENTRIES = (
    TraceEntry("Definition of the Fano scheme",
               "the subscheme of zeros of this section",
               ("phi.membership",), ALL),
    TraceEntry("Nodal and cuspidal cyclic setups (the forms F, q, k, g and the surface Q cap K)",
               r"x_0 q(x_1, \ldots,x_5) + k(x_1, \ldots, x_5)",
               ("validate.shape", "validate.singular_point", "validate.q_rank",
                "validate.samples_on_sigma", "validate.sigma_transversal_at_samples",
                "validate.no_other_singular_sample", "validate.finite_field_probe",
                "validate.vertex_off_K"), ALL),
    TraceEntry("Planes through the singular point versus lines on the surface",
               "if and only if the K3 surface",
               ("validate.plane_iff_line_on_sigma", "phi.designed_plane"), ALL),
    TraceEntry("Construction of the residual-line map and of its inverse",
               "it cuts~$Y$ along a residual line",
               ("phi_inv.section", "phi_inv.node_lines_rejected", "phi_inv.quadratic_field",
                "roundtrip.phi_inverse_phi"), ALL),
    TraceEntry("Adapted normal form of q and k (nodal and cuspidal)",
               r"q &= x_1 h_1(x_2, x_3, x_4, x_5) + q_1(x_2, x_3, x_4, x_5)",
               ("local.adapted_form",), ALL),
    TraceEntry("The trident divisor",
               r"consists in three lines through",
               ("phi.trident",), ALL),
    TraceEntry("Residual conic on the plane P_a (nodal and cuspidal)",
               r"h_1(a) t_0 t_1  + q_1(a) t_0 t_2  + h_2(a) t_1 ^ 2",
               ("local.residual_conic",), ALL),
    TraceEntry("Fibre condition h1 = q1 = 0: a nonsingular conic, or two lines in the cuspidal case",
               "h_1(a) = q_1(a) = 0.",
               ("sing.fibre_geometry",), ALL),
    TraceEntry("Local equations of the Fano scheme in the Pluecker chart",
               r"\psi_{3,0} &=q_1(p_1) + k_1(p_1)",
               ("local.chart_equations_direct", "local.chart_biconditional"), ALL),
    TraceEntry("Jacobian matrix at a point of the surface",
               "The Jacobian matrix of",
               ("local.jacobian_sigma", "local.jacobian_off_sigma"), ALL),
    TraceEntry("Implicit reduction and the A1 and A2 rank tests",
               "has an $A_1$-singularity at the origin",
               ("sing.transversal_type",), ALL),
    TraceEntry("Equations of the blowup in the chart a5 != 0",
               r"\overline\psi_{3, 0} &=  q_1(\ta) - p_{1, 5} k_1(\ta)",
               ("local.blowup_equations",), ALL),
    TraceEntry("Exceptional fibre of the blowup",
               r"q_1(a) = h_1(a) = 0\}",
               ("local.exceptional_fibre",), ALL),
    TraceEntry("Quintic determinant of the Togliatti-type surface",
               "whose singular locus is generically the curve",
               ("local.togliatti_quintic",), NODAL),
    TraceEntry("Class of the trident divisor",
               r"[\Psi] = h - 2 \delta",
               ("divisors.intersection_numbers", "divisors.oracle_agreement", "divisors.trident_class"),
               ALL),
    TraceEntry("Rays of the nef cone",
               "second divisorial contraction",
               ("divisors.nef_rays",), ALL),
    TraceEntry("Order-three symmetry on the Pluecker chart and equivariance of the map",
               r"so $\varphi(\tau^{[2]}(\xi)) = \sigma(\varphi(\xi))$",
               ("symmetry.phi_equivariance", "symmetry.order_three", "symmetry.chart_action"), CUSP),
    TraceEntry("Lift of the symmetry to the blowup",
               r"sends $a_5$ to $\xi a_5$",
               ("symmetry.blowup_action",), CUSP),
    TraceEntry("Picard lattice of the Hilbert square in the cuspidal cyclic case",
               r"\langle 6\rangle \oplus A_2(-1)",
               ("lattice.bbf_constants",), ALL),
    TraceEntry("Fixed loci of the symmetries",
               "given by the equation $x_5 = 0$",
               ("symmetry.fixed_locus", "symmetry.fixed_lines"), CUSP),
    TraceEntry("Lattice isometry",
               r"U(3)\oplus \langle -2\rangle \cong \langle 6\rangle \oplus A_2(-1)",
               ("lattice.isometry",), ALL),
)

# Checks that only run on some of the listed fixtures.
APPLIES = {
    "validate.vertex_off_K": CUSP,
    "phi.designed_plane": ("FX-N2", "FX-C2"),
    "phi_inv.quadratic_field": ("FX-N1",),
}


def check_index() -> dict[str, TraceEntry]:
    """Check name to its entry; raises if a check is listed twice."""
    out = {}
    for e in ENTRIES:
        for c in e.checks:
            if c in out:
                raise ValueError(f"{c} appears in more than one entry")
            out[c] = e
    return out


def fixtures_for(check: str) -> tuple[str, ...]:
    return APPLIES.get(check, check_index()[check].fixtures)


def render() -> str:
    lines = [
        "# Traceability",
        "",
        "Each row ties one mathematical statement to the report checks that exercise it.",
        "The quote column reproduces a fragment of the source text (LaTeX kept as is).",
        "Fixture ids list where each check runs; elsewhere it reports `not_applicable`.",
        "Regenerate with `python -m fano_lines.trace`.",
        "",
        "| Statement | Quote | Checks | Fixtures |",
        "|---|---|---|---|",
    ]
    for e in ENTRIES:
        checks = "<br>".join(f"`{c}`" for c in e.checks)
        fx = "<br>".join(f"`{c}`: {', '.join(fixtures_for(c))}" if c in APPLIES else ""
                         for c in e.checks if c in APPLIES)
        fixtures = ", ".join(e.fixtures) + (f"<br>{fx}" if fx else "")
        quote = e.quote.replace("|", r"\|")
        lines.append(f"| {e.anchor} | `{quote}` | {checks} | {fixtures} |")
    return "\n".join(lines) + "\n"


def main() -> int:
    DOC.parent.mkdir(parents=True, exist_ok=True)
    DOC.write_text(render(), encoding="utf-8")
    print(DOC)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
