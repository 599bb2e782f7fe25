#!/usr/bin/env python3
"""Regenerate the bundled half-integral plus-space bases.

For each supported level 4p and each odd doubled-weight in the shipped
range, the holomorphic plus space is carved out of theta-shifted integer
weight spaces: candidates b / theta**i with b running over a basis of
M_W(Gamma0(4p)) are combined so that every exponent off the two allowed
residue classes mod 4 cancels.  The count of independent solutions must
equal the dimension of the matching integer weight space at level p,
which certifies completeness; anything else aborts the run.

The output lands in src/weakforms/data/seeds/<level>/<weight2>/<idx>.qs
and is exactly what weakforms.spaces loads at runtime.  The computation
is deterministic, so regeneration is only needed when the truncation
budget or the supported ranges change.

Usage:  python3 tools/make_seeds.py [outdir] [level ...]
"""

import os
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

from weakforms.modforms import holomorphic_basis, theta_series
from weakforms.spaces import (SEED_RANGE, _SEED_TRUNC, _plus_dim,
                              _plus_nullspace, plus_residues)

WORK = _SEED_TRUNC + 24


def seed_space(level: int, weight2: int):
    s = (weight2 - 1) // 2
    i = 1 if s % 2 else 3
    w_hol = (weight2 + i) // 2
    theta_inv = theta_series(WORK).invert() ** i
    atoms = [b * theta_inv for b in holomorphic_basis(level, w_hol, WORK)]
    rows = _plus_nullspace(atoms, plus_residues(weight2), 0)
    expect = _plus_dim(level, weight2)
    if len(rows) != expect:
        raise SystemExit(
            "level %d weight2 %d: found %d plus forms, expected %d"
            % (level, weight2, len(rows), expect)
        )
    return rows


def main() -> None:
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        HERE, "..", "src", "weakforms", "data", "seeds")
    wanted = [int(a) for a in sys.argv[2:]] or sorted(SEED_RANGE)
    for level in wanted:
        lo, hi = SEED_RANGE[level]
        for weight2 in range(lo, hi + 1, 2):
            t0 = time.time()
            rows = seed_space(level, weight2)
            path = os.path.join(outdir, str(level), str(weight2))
            os.makedirs(path, exist_ok=True)
            for idx, row in enumerate(rows):
                text = row.truncate(_SEED_TRUNC).to_text(
                    {"level": level, "weight2": weight2})
                with open(os.path.join(path, "%d.qs" % idx), "w",
                          encoding="ascii") as fh:
                    fh.write(text)
            print("level %2d weight2 %2d: %2d forms  (%.1fs)"
                  % (level, weight2, len(rows), time.time() - t0))


if __name__ == "__main__":
    main()
