"""Worked examples on FX-N1 and FX-C1, recomputed from the fixtures.

``python -m fano_lines.worked`` rewrites ``docs/worked_examples.md``; the test
suite checks that the committed file matches a fresh rendering.
"""
from __future__ import annotations

from pathlib import Path

from . import linalg
from .corpus import FIXTURE_DIR
from .fanomaps import (PlaneInY, fibre_conic, fibre_points, phi, phi_inverse, residual_conic,
                       residual_conic_identity, togliatti_quintic, trident_membership)
from .fields import to_str
from .fourfold import load, no_line_certificate
from .lattice import (A2, DELTA, H, IntegralLattice, U, bbf, direct_sum, intersection_table,
                      lattice_isometric, nef_rays, solve_divisor_class)
from .lines import (CHART_ORDER, NODE, ProjectiveLine, Reduced, chart_equations_direct, line_in_Y,
                    restrict_to_line)
from .localmodel import (blowup_chart_equations, blowup_pullback, classify_transversal_type,
                         adapt_frame, exceptional_fibre, fibre_pair, jacobian_at_center, local_equations)
from .suites import schemes

DOC = Path(__file__).resolve().parents[2] / "docs" / "worked_examples.md"


def _vec(v) -> str:
    return "(" + ", ".join(to_str(c) for c in v) + ")"


def _mat(M) -> list[str]:
    rows = [[to_str(c) for c in r] for r in M]
    w = max(len(c) for r in rows for c in r)
    return ["    [" + "  ".join(c.rjust(w) for c in r) + "]" for r in rows]


def _ratio(f, g):
    """c with f = c * g, or None."""
    if g.is_zero():
        return None
    e, c = next(iter(g.sorted_terms()))
    r = f.coefficient(e) / c
    return r if f == g * r else None


def _code(lines) -> list[str]:
    return ["```"] + list(lines) + ["```", ""]


def _setup(Y, out):
    sing = "node" if Y.kind == "nodal" else "cusp"
    out += ["### Setup", "",
            f"The fourfold is F = x0*q + k with its {sing} at e0 = (1:0:0:0:0:0). "
            f"The fixture records {len(Y.points)} points of the surface Q cap K.", ""]
    out += _code([f"q = {Y.q}", f"k = {Y.k}"])
    if Y.kind != "nodal":
        out += ["Here q does not involve x5 and k - x5^3 does not either, so the form is "
                "invariant under x5 -> zeta*x5.", ""]


def _planes(Y, out):
    out += ["### Planes through the singular point", ""]
    if Y.lines:
        out += [f"The surface contains {len(Y.lines)} designed line(s), so Y contains a plane "
                "through the singular point.", ""]
        return
    cert = no_line_certificate(Y)
    out += [f"Reducing mod {cert['prime']} and enumerating every line of the quadric over that field finds "
            "no line on the surface, so it has no line over Q and Y has no plane through the "
            "singular point.", ""]


def _phi(Y, out):
    out += ["### Residual line and its inverse", ""]
    xi = next(x for x in schemes(Y, 20, 0)
              if isinstance(x, Reduced) and not trident_membership(Y, x))
    line = phi(Y, xi)
    back = phi_inverse(Y, line)
    out += ["A reduced scheme xi, the residual line of the plane spanned by e0 and xi, "
            "and the scheme recovered from that line:", ""]
    out += _code([f"xi        = {xi!r}",
                  f"line      = span{tuple(_vec(r) for r in line.span)}",
                  f"F|line    = {restrict_to_line(Y.F, line)}",
                  f"in Y      = {line_in_Y(Y, line)}",
                  f"phi^-1    = {back!r}",
                  f"round trip exact: {back == xi}"])
    tri = [x for x in schemes(Y, 60, 0) if trident_membership(Y, x)]
    if tri:
        t = tri[0]
        res = phi(Y, t)
        through = (not isinstance(res, PlaneInY)) and res.contains(NODE)
        out += ["A scheme on a line of Q (a trident point): the residual line passes through the "
                "singular point.", ""]
        span = ProjectiveLine(*t.points) if isinstance(t, Reduced) else ProjectiveLine(t.point, t.direction)
        out += _code([f"xi = {t!r}", f"q on the span = {restrict_to_line(Y.q, span)}",
                      f"residual line through e0: {through}"])
    else:
        out += ["None of the first 60 seeded schemes lies on a line of Q, so each residual line "
                "misses the singular point.", ""]


def _frame(Y, out):
    s = Y.points[0]
    fr = adapt_frame(Y, s)
    d = fr.decomposition()
    out += ["### Adapted frame", "",
            f"At s = {_vec(s)} the frame change x = T*y moves the singular point to e0 and s to e1 "
            "with h1 = x2 and h2 = x3 (plus a multiple of x5).", ""]
    out += _code(["T ="] + _mat(fr.transform))
    pieces = [f"h1 = {d.h1}", f"h2 = {d.h2}", f"q1 = {d.q1}", f"q2 = {d.q2}", f"k1 = {d.k1}"]
    if Y.kind != "nodal":
        pieces.append(f"coefficient of x5^3 = {to_str(d.cube)}")
    q, k = d.reconstruct()
    pieces.append(f"q = x1*h1 + q1 and k = x1^2*h2 + x1*q2 + k1 hold exactly: {(q, k) == (fr.q, fr.k)}")
    out += _code(pieces)
    return fr


def _conic(Y, fr, out):
    out += ["### Residual conic", "",
            "On the plane P_a spanned by e0, e1 and (0:0:a), F restricts to t2 times the conic C_a.", ""]
    rows = []
    test = [(1, 1, 1, 1), (1, -1, 2, 0)]
    if Y.kind != "nodal":
        test.append((0, 0, 0, 1))
    for a in test:
        rows.append(f"a = {a}:  C_a = {residual_conic(fr, a)}   identity holds: {residual_conic_identity(fr, a)}")
    out += _code(rows)
    fc = fibre_conic(fr)
    out += ["The fibre over the line through s is {h1(a) = q1(a) = 0} in the a-space:", ""]
    h1, q1 = fibre_pair(fr)
    lines = [f"h1(a) = {h1}", f"q1(a) = {q1}", f"{fc.kind}, rank of q1 on ker h1 = {fc.rank}"]
    if fc.singular_point is not None:
        lines.append(f"the two lines meet at {_vec(fc.singular_point)}")
        for ln in fc.lines:
            lines.append(f"  line through {_vec(ln[0])} and {_vec(ln[1])}")
    lines.append(f"sample points: {', '.join(_vec(p) for p in fibre_points(fr, 3, seed=0))}")
    out += _code(lines)


def _chart(Y, fr, out):
    eqs = local_equations(fr)
    direct = chart_equations_direct(fr.F)
    out += ["### Local equations in the Pluecker chart", "",
            "Lines spanned by e0 + p0 and e1 + p1 with p0, p1 in span(e2, ..., e5). "
            "Linear part of each equation, its number of terms, and agreement with the direct "
            "restriction of F:", ""]
    out += _code([f"{n}: linear part {eqs[n].homogeneous_part(1) or 0}, {len(eqs[n].terms)} terms, "
                   f"equal to direct restriction: {eqs[n] == direct[n]}" for n in CHART_ORDER])
    J = jacobian_at_center(fr)
    out += ["Jacobian at p0 = p1 = 0 (rows psi30, psi03, psi21, psi12; columns p02..p05, p12..p15). "
            f"Its rank is {linalg.rank(J)}: the psi30 row vanishes and the remaining three rows are "
            "independent because grad h1 and grad h2 are.", ""]
    out += _code(_mat(J))


def _type(Y, fr, out):
    v = classify_transversal_type(fr)
    w = v.witness
    out += ["### Transversal type", "",
            "On the slice p04 = p05 = 0, psi03 and psi12 give p02 and p03, psi21 gives p12, and "
            "what remains of psi30 is a function of (p13, p14, p15).", ""]
    lines = [f"quadratic part = {w['quadratic_part']}", f"rank = {w['rank']}",
             f"q1 restricted to ker h1 = {w['q1_on_ker_h1']} (rank {w['q1_on_ker_h1_rank']})"]
    if Y.kind != "nodal":
        lines += [f"linear term of the p12 series = {w['p12_linear_term'] or 0}",
                  f"coefficient of p15^3 = {to_str(w['p15_cubed'])}"]
    lines.append(f"type: {v.type}")
    out += _code(lines)


def _blowup(Y, fr, out):
    pull = blowup_pullback(local_equations(fr))
    blow = blowup_chart_equations(fr)
    e1, e2 = exceptional_fibre(fr)
    h1, q1 = fibre_pair(fr)
    out += ["### Blowup chart a5 != 0", "",
            "Substituting p1i = a_i*p15 and dividing by the exceptional equation gives the chart "
            "equations; they agree with the pullback of the local equations.", ""]
    out += _code([f"pullback equals chart equations: {all(pull[n] == blow[n] for n in CHART_ORDER)}",
                  f"exceptional fibre: {e1} = 0, {e2} = 0",
                  f"first equation = {to_str(_ratio(e1, q1))} * q1,  second = {to_str(_ratio(e2, h1))} * h1"])


def _togliatti(fr, out):
    T = togliatti_quintic(fr)
    pts = fibre_points(fr, 4, seed=0)
    out += ["### Quintic determinant", "",
            "det [[0, h1, q1], [h1, 2h2, q2], [q1, q2, 2k1]] as a form in a:", ""]
    out += _code([f"degree {T.homogeneous_degree()}, {len(T.terms)} terms",
                  "gradient at fibre points: " + ", ".join(
                      "0" if not any(T.gradient_at(list(p))) else "nonzero" for p in pts)])


def _symmetry(Y, out):
    from . import symmetry as sym

    s = next(p for p in Y.points if not p[5])
    ch = sym.chart_equivariance_check(Y, s)
    bl = sym.blowup_equivariance_check(Y, s)
    out += ["### Order-three symmetry", "",
            f"At s = {_vec(s)} on the curve x5 = 0, scaling p05 and p15 by zeta multiplies each "
            "chart equation by a unit; on the blowup chart a2, a3, a4 are scaled by zeta^-1 as well.", ""]
    units = ", ".join(f"{n}: {ch['units'][n]}" for n in CHART_ORDER)
    images = ", ".join(f"{n} -> {m[0]} * {m[1]}" for n, m in bl["matches"].items())
    out += _code([f"chart units: {units}",
                  f"blowup images: {images}",
                  f"fixed points on the a-space fibre are those with a5 = 0 or a = e5: {bl['fibre_fixed_points']}"])
    fl = sym.fixed_locus_check(Y, ambient_samples=[sym.VERTEX])
    out += _code([f"surface points fixed: {sum(e['fixed'] for e in fl['sigma'])} of {len(fl['sigma'])}, "
                  f"each fixed exactly when x5 = 0: {fl['pass']}",
                  f"vertex e5: {fl['vertex']}"])


def _fixture(name, out):
    Y = load(FIXTURE_DIR / f"{name}.json")
    out += [f"## {name} ({Y.kind})", ""]
    _setup(Y, out)
    _planes(Y, out)
    _phi(Y, out)
    fr = _frame(Y, out)
    _conic(Y, fr, out)
    _chart(Y, fr, out)
    _type(Y, fr, out)
    _blowup(Y, fr, out)
    if Y.kind == "nodal":
        _togliatti(fr, out)
    else:
        _symmetry(Y, out)
    return Y


def _divisors(Y, out):
    t = intersection_table(Y, 0)
    v = {k: t[k].value for k in t if k != "curve"}
    psi = solve_divisor_class(v["gamma_psi"], v["gamma_h"], v["gamma_delta"],
                              v["lambda_psi"], v["lambda_h"], v["lambda_delta"])
    out += ["## Divisor class of the trident divisor (FX-N1, seed 0)", "",
            f"Gamma: schemes (x, a) with x = {_vec(t['curve']['x'])} and a on the hyperplane section "
            f"with coefficients {t['curve']['C']}. Lambda: nonreduced schemes supported at x.", ""]
    out += _code([f"{k:17s} = {val}" for k, val in sorted(v.items())]
                 + [f"[Psi] = {psi.a}*h + ({psi.b})*delta",
                    "nef rays: " + ", ".join(f"{r.a}*h + ({r.b})*delta" for r in nef_rays())])


def _lattice(out):
    L1 = IntegralLattice(direct_sum(U(3), [[-2]]))
    L2 = IntegralLattice(direct_sum([[6]], A2(-1)))
    res = lattice_isometric(L1, L2, 5)
    out += ["## Lattices", "",
            f"<h, h> = {bbf(H, H)}, <delta, delta> = {bbf(DELTA, DELTA)}, <h, delta> = {bbf(H, DELTA)}.", ""]
    out += _code([f"U(3) + <-2>: det {L1.det()}, signature {L1.signature()}",
                  f"<6> + A2(-1): det {L2.det()}, signature {L2.signature()}",
                  "M with M^T G1 M = G2:"] + _mat(res.matrix))


def render() -> str:
    out = ["# Worked examples", "",
           "Every value below is recomputed from the committed fixtures in exact arithmetic. "
           "Regenerate with `python -m fano_lines.worked`.", ""]
    n1 = _fixture("FX-N1", out)
    _fixture("FX-C1", out)
    _divisors(n1, out)
    _lattice(out)
    return "\n".join(out).rstrip() + "\n"


def main() -> int:
    DOC.parent.mkdir(parents=True, exist_ok=True)
    DOC.write_text(render(), encoding="utf-8")
    print(DOC)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
