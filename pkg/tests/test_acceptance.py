"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before it
asserts, so a failing criterion still reports what it measured.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from conftest import record_criterion

from fano_lines import linalg
from fano_lines.fanomaps import (PlaneInY, fibre_conic, fibre_points, phi, phi_inverse,
                                 residual_conic, togliatti_quintic)
from fano_lines.lattice import (A2, DELTA, H, IntegralLattice, U, bbf, direct_sum,
                                intersection_table, lattice_isometric, nef_rays, solve_divisor_class)
from fano_lines.lines import (CHART_ORDER, Nonreduced, PluckerChart, Reduced, jacobian,
                              restrict_to_line)
from fano_lines.localmodel import (adapt_frame, blowup_chart_equations, blowup_pullback,
                                   classify_transversal_type, exceptional_fibre,
                                   expected_jacobian_pattern, fibre_pair, local_equations,
                                   same_up_to_unit)
from fano_lines.poly import Poly
from fano_lines.suites import chart_samples, recoverable_schemes, schemes
from fano_lines.symmetry import (LEVELS, VERTEX, ZETA, act, blowup_equivariance_check,
                                 chart_equivariance_check, check_equivariance_phi,
                                 equivariance_samples, fixed_locus_check, is_fixed, order_is_three,
                                 same)

SEED = 0


@pytest.fixture(scope="module")
def roundtrip_samples(n1, c1):
    return {"FX-N1": recoverable_schemes(n1, 100, SEED)[0], "FX-C1": recoverable_schemes(c1, 100, SEED)[0]}


def test_criterion_01_round_trip(fixtures, roundtrip_samples):
    rows = []
    ok = True
    for name, samples in roundtrip_samples.items():
        Y = fixtures[name]
        good = sum(phi_inverse(Y, phi(Y, xi)) == xi for xi in samples)
        nonred = sum(isinstance(xi, Nonreduced) for xi in samples)
        ok &= good == len(samples) >= 100 and nonred >= 25
        rows.append(f"{name} {good}/{len(samples)} ({nonred} nonreduced)")
    for name in ("FX-N2", "FX-C2"):
        Y = fixtures[name]
        a, b = Y.lines[0]
        hit = isinstance(phi(Y, Reduced(a, b)), PlaneInY) and isinstance(phi(Y, Nonreduced(a, b)), PlaneInY)
        ok &= hit
        rows.append(f"{name} designed plane -> PlaneInY: {hit}")
    assert record_criterion(1, ok, "round trip: " + "; ".join(rows))


def test_criterion_02_membership(fixtures, roundtrip_samples):
    lam_mu = [(3, 0), (2, 1), (1, 2), (0, 3)]
    checked, ok = 0, True
    extra = {n: schemes(fixtures[n], 40, SEED) for n in ("FX-N2", "FX-C2")}
    for name, samples in list(roundtrip_samples.items()) + list(extra.items()):
        Y = fixtures[name]
        for xi in samples:
            line = phi(Y, xi)
            if isinstance(line, PlaneInY):
                continue
            r = restrict_to_line(Y.F, line)
            coeffs = [r.coefficient(e) for e in lam_mu]
            ok &= all(c == 0 for c in coeffs) and r.is_zero()
            checked += 1
    assert record_criterion(2, ok and checked >= 200,
                            f"membership: F vanishes identically on {checked} residual lines")


def test_criterion_03_local_equations(fixtures):
    rows, ok = [], True
    for name, Y in fixtures.items():
        fr = adapt_frame(Y, Y.points[0])
        eqs = local_equations(fr)
        on, off = chart_samples(Y, fr, 100, SEED)
        pts = on + off
        agree = 0
        for p in pts:
            local = not any(eqs[n].evaluate(list(p)) for n in CHART_ORDER)
            direct = restrict_to_line(fr.F, PluckerChart(p[:4], p[4:]).line()).is_zero()
            agree += local == direct
        ok &= agree == len(pts) >= 200 and len(on) > 0
        rows.append(f"{name} {agree}/{len(pts)} ({len(on)} on F(Y))")
    assert record_criterion(3, ok, "chart equations iff line in Y: " + "; ".join(rows))


def test_criterion_04_jacobian(fixtures):
    rows, ok = [], True
    for name, Y in fixtures.items():
        ranks, patterns = [], 0
        for s in Y.points[:5]:
            fr = adapt_frame(Y, s)
            J = jacobian(local_equations(fr), [0] * 8)
            ranks.append(linalg.rank(J))
            patterns += J == expected_jacobian_pattern(fr)
        fr = adapt_frame(Y, Y.points[0])
        eqs = local_equations(fr)
        on, _ = chart_samples(Y, fr, 40, SEED + 1)
        off_ranks = {linalg.rank(jacobian(eqs, p)) for p in on}
        ok &= len(ranks) >= 5 and set(ranks) == {3} and patterns == len(ranks)
        ok &= len(on) >= 20 and off_ranks == {4}
        rows.append(f"{name} sigma ranks {sorted(set(ranks))} x{len(ranks)}, off-sigma ranks "
                    f"{sorted(off_ranks)} x{len(on)}")
    text = ("Jacobian (measured rank 3 at surface points with the displayed pattern; the stated "
            "rank 2 cannot hold since the pattern has three independent rows): " + "; ".join(rows))
    assert record_criterion(4, ok, text)


def test_criterion_05_singularity_type(fixtures):
    rows, ok = [], True
    for name, Y in fixtures.items():
        want, r = ("A1", 3) if Y.kind == "nodal" else ("A2", 2)
        types = []
        for s in Y.points[:5]:
            v = classify_transversal_type(adapt_frame(Y, s))
            good = v.type == want and v.witness["rank"] == r
            if want == "A2":
                good &= not v.witness["p12_linear_term"] and bool(v.witness["p15_cubed"])
            ok &= good
            types.append(v.type)
        rows.append(f"{name} {','.join(types)}")
    assert record_criterion(5, ok, "transversal type: " + "; ".join(rows))


def test_criterion_06_fibres(fixtures):
    rows, ok = [], True
    t2 = Poly.var("t2", ("t0", "t1", "t2"))
    for name, Y in fixtures.items():
        kinds = set()
        for s in Y.points[:5]:
            fc = fibre_conic(adapt_frame(Y, s))
            kinds.add(fc.kind)
            if Y.kind == "nodal":
                ok &= fc.kind == "nonsingular_conic"
            else:
                ok &= fc.kind == "two_lines" and tuple(fc.singular_point) == (0, 0, 0, 1)
                ok &= fc.lines[0] != fc.lines[1]
        if Y.kind != "nodal":
            c4 = [s for s in Y.points if not s[5]]
            sq = all(residual_conic(adapt_frame(Y, s), (0, 0, 0, 1)) == t2 * t2 for s in c4)
            ok &= sq and bool(c4)
            kinds.add(f"C_a = t2^2 at {len(c4)} points: {sq}")
        rows.append(f"{name} {sorted(kinds)}")
    assert record_criterion(6, ok, "fibres: " + "; ".join(rows))


EXPECTED = {"gamma_h": 6, "gamma_delta": 0, "gamma_psi": 6, "gamma_psi_lemma": 6,
            "lambda_h": 0, "lambda_psi": 2, "lambda_psi_lemma": 2}
# numbers computed by counting points; the zero ones come from disjointness and have no count
ORACLE_KEYS = ("gamma_h", "gamma_psi", "gamma_psi_lemma", "lambda_psi", "lambda_psi_lemma")


def test_criterion_07_intersection_numbers(fixtures):
    ok, tables = True, 0
    for name, Y in fixtures.items():
        for seed in (SEED, SEED + 1):
            t = intersection_table(Y, seed)
            for key, want in EXPECTED.items():
                r = t[key]
                ok &= r.value == want
                if key in ORACLE_KEYS:
                    counts = [o["count"] for o in r.oracle]
                    ok &= r.univariate_degree == want and len(counts) >= 3 and set(counts) == {want}
            tables += 1
            if seed == SEED and name == "FX-N1":
                psi = solve_divisor_class(t["gamma_psi"].value, t["gamma_h"].value, t["gamma_delta"].value,
                                          t["lambda_psi"].value, t["lambda_h"].value, t["lambda_delta"].value)
                ok &= (psi.a, psi.b) == (1, -2)
    rays = [(r.a, r.b) for r in nef_rays()]
    ok &= rays == [(1, 0), (2, -3)]
    assert record_criterion(7, ok, f"intersection numbers on {tables} curve choices, [Psi] = h - 2 delta, "
                                   f"nef rays {rays}")


def test_criterion_08_blowup(fixtures):
    ok, points = True, 0
    rng = random.Random(SEED)
    for Y in fixtures.values():
        fr = adapt_frame(Y, Y.points[0])
        e30, e21 = exceptional_fibre(fr)
        h1, q1 = fibre_pair(fr)
        ok &= same_up_to_unit(e21, h1) and same_up_to_unit(e30, q1)
        pull = blowup_pullback(local_equations(fr))
        blow = blowup_chart_equations(fr)
        for _ in range(50):
            v = [Fraction(rng.randint(-5, 5)) for _ in range(8)]
            ok &= all(pull[n].evaluate(v) == blow[n].evaluate(v) for n in CHART_ORDER)
            points += 1
    assert record_criterion(8, ok, f"blowup: exceptional fibre = (h1, q1) up to units, pullback agrees "
                                   f"at {points} chart points")


def test_criterion_09_equivariance(c1, c2):
    ok, n = True, 0
    for Y in (c1, c2):
        samples = equivariance_samples(Y, 50, SEED)
        ok &= check_equivariance_phi(Y, samples).ok
        n += len(samples)
        for s in [p for p in Y.points if not p[5]][:2]:
            ok &= chart_equivariance_check(Y, s)["pass"] and blowup_equivariance_check(Y, s)["pass"]
    xi = equivariance_samples(c1, 1, SEED + 3)[0]
    objs = {"ambient_P5": (1, 2, 3, 4, 5, 6), "sigma_surface": next(p for p in c1.points if p[5]),
            "grassmannian": phi(c1, xi), "hilb2": xi, "plucker_chart": tuple(range(1, 9)),
            "blowup_chart": tuple(range(1, 9)), "a_space": (1, 2, 3, 4)}
    ok &= set(objs) == set(LEVELS) and all(order_is_three(lvl, o) for lvl, o in objs.items())
    assert record_criterion(9, ok, f"equivariance on {n} Q(zeta3) samples, chart and blowup actions, "
                                   f"order three on {len(objs)} levels")


def test_criterion_10_fixed_loci(c1, c2):
    ok, counts = True, []
    for Y in (c1, c2):
        rep = fixed_locus_check(Y, ambient_samples=[(1, 2, 3, 4, 5, 0), (0, 1, 0, 0, 0, 2), VERTEX])
        ok &= rep["pass"]
        ok &= all(is_fixed(s) == (s[5] == 0) for s in Y.points)
        counts.append(sum(is_fixed(s) for s in Y.points))
    ok &= is_fixed(VERTEX) and same("ambient_P5", act("ambient_P5", VERTEX, ZETA), VERTEX)
    ok &= not c1.on_sigma(VERTEX) and not c2.on_sigma(VERTEX)
    assert record_criterion(10, ok, f"fixed loci: fixed surface points {counts} are exactly those with x5 = 0; "
                                    f"vertex fixed and off the surface")


def test_criterion_11_lattice():
    L1 = IntegralLattice(direct_sum(U(3), [[-2]]))
    L2 = IntegralLattice(direct_sum([[6]], A2(-1)))
    pre = L1.signature() == L2.signature() and L1.det() == L2.det()
    res = lattice_isometric(L1, L2, 5)
    ok = pre and res.found
    if res.found:
        M = res.matrix
        MT = linalg.transpose(M)
        ok &= linalg.matmul(linalg.matmul(MT, L1.gram), M) == [[Fraction(v) for v in r] for r in L2.gram]
    ok &= bbf(H, H) == 6 and bbf(DELTA, DELTA) == -2 and bbf(H, DELTA) == 0
    assert record_criterion(11, ok, f"lattice: det {L1.det()} = {L2.det()}, signature {L1.signature()}, "
                                    f"certificate {res.matrix}")


def test_criterion_12_togliatti(n1, n2):
    ok, rows = True, []
    for name, Y in (("FX-N1", n1), ("FX-N2", n2)):
        fr = adapt_frame(Y, Y.points[0])
        T = togliatti_quintic(fr)
        pts = fibre_points(fr, 10, seed=SEED)
        zero = sum(not any(T.gradient_at(list(a))) for a in pts)
        ok &= T.homogeneous_degree() == 5 and len(pts) >= 10 and zero == len(pts)
        rows.append(f"{name} degree {T.homogeneous_degree()}, gradient zero at {zero}/{len(pts)} points")
    assert record_criterion(12, ok, "Togliatti quintic: " + "; ".join(rows))

