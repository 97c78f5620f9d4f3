"""Recipes for the shipped fixtures and a regenerator.

``python -m fano_lines.corpus [--seed S] [--out DIR]`` rewrites the four
fixture files; with seed 0 the output is byte-identical to the committed ones.
"""
from __future__ import annotations

import argparse
from pathlib import Path

from .fourfold import FixtureGenerationError, make_fixture, no_line_certificate

FIXTURE_DIR = Path(__file__).resolve().parents[2] / "fixtures"

# Points of H0 = {x0 = 0}. The first two points of FX-N1 span a line on Q.
_N1_POINTS = [
    (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 1, 0), (0, 1, 1, 1, 0, 1),
    (0, 2, -1, 0, 1, 1), (0, 1, 0, -2, 1, 3), (0, 0, 1, 1, -1, 2), (0, 3, 1, -1, 0, -1),
    (0, 1, -2, 1, 1, -1),
]
_N2_POINTS = [
    (0, 0, 1, 0, 1, 0), (0, 0, 0, 1, 0, -1), (0, 0, 1, 1, 1, -1), (0, 1, 0, 0, 0, 0),
    (0, 1, 1, 0, 2, 1), (0, 2, 0, 1, -1, 1),
]
_C1_POINTS = [
    (0, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0), (0, 1, -1, 2, 1, 0),
    (0, 0, 1, 0, 1, 1), (0, 1, 0, 1, 2, -1), (0, 2, 1, -1, 0, 1), (0, 1, 1, 1, -1, 2),
]
_C2_POINTS = [
    (0, 0, 1, 0, 1, 1), (0, 0, 0, 1, 0, -1), (0, 0, 1, 1, 1, 0), (0, 1, 0, 0, 0, 0),
    (0, 1, 2, 0, 1, 0), (0, 2, 1, 1, 0, 1),
]

RECIPES = {
    "FX-N1": dict(kind="nodal", points=_N1_POINTS, trident_pairs=[(0, 1)],
                  conjugate_pairs=[{"d": 2, "p": (0, 1, 1, 0, 2, 1), "r": (0, 0, 1, 1, 0, 1)}],
                  certify_no_line=True),
    "FX-N2": dict(kind="nodal", points=_N2_POINTS, want_line_on_sigma=True),
    "FX-C1": dict(kind="cuspidal_cyclic", points=_C1_POINTS, certify_no_line=True),
    "FX-C2": dict(kind="cuspidal_cyclic", points=_C2_POINTS, want_line_on_sigma=True),
}


def build(name: str, seed: int = 0):
    recipe = dict(RECIPES[name])
    certify = recipe.pop("certify_no_line", False)
    Y = make_fixture(seed=seed, name=name, **recipe)
    if certify:
        cert = no_line_certificate(Y)
        if not cert["certified"]:
            raise FixtureGenerationError(f"{name}: could not certify that Sigma has no line: {cert}")
        Y.recipe["no_line_prime"] = cert["prime"]
    return Y


def regenerate_fixtures(seed: int = 0, out_dir=None, names=None) -> dict[str, Path]:
    """Rebuild fixtures from their recipes and write them as JSON files."""
    out = Path(out_dir) if out_dir is not None else FIXTURE_DIR
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in names or RECIPES:
        Y = build(name, seed)
        path = out / f"{name}.json"
        path.write_text(Y.dumps(), encoding="utf-8")
        written[name] = path
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m fano_lines.corpus", description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="output directory (default: the fixtures/ dir)")
    ap.add_argument("names", nargs="*", help="subset of fixture names")
    args = ap.parse_args(argv)
    for name, path in regenerate_fixtures(args.seed, args.out, args.names or None).items():
        print(f"{name}: {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
