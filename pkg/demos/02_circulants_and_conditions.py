"""
Circulant blocks and the admissibility conditions
=================================================

A block circulant is an m1 x (m2 - m1) grid of p x p circulants. The
conditions i..v reject degenerate shapes: shared values across a block,
rows that are reorderings of each other, multiplicity patterns whose
stabilizer would be too large.
"""

import numpy as np

from qcnied import BlockCirculant, CirculantBlock, FieldCtx, ParityCheck
from qcnied import sample_compliant, validate_all

ctx = FieldCtx(2)

b = CirculantBlock(ctx, (1, 2, 3, 0, 1))
print("first row", b.first_row)
print(b.expand())

# row k of the expansion is the first row rotated k steps
assert np.array_equal(b.rotate(1).expand()[0], b.expand()[1])

# the multiset ignores order; multiplicities are what the conditions read
print("multiset", b.multiset(), "multiplicities", b.multiplicity_classes())

# a full matrix, one block here since m1 = 1 and m2 = 2
c = BlockCirculant.from_rows(ctx, 5, 1, 2, [(1, 2, 3, 0, 1)])
rep = validate_all(c, desk_scale=True)
for name, verdict in rep.items():
    print(f"condition {name:<10} {verdict.status}", verdict.witness or "")
print("strict ok:", rep.strict_ok())

# a constant row fails condition i (all multiplicities collapse) and the
# witness names the offending block
flat = BlockCirculant.from_rows(ctx, 5, 1, 2, [(3, 3, 3, 3, 3)])
rep = validate_all(flat, desk_scale=True)
print("\nconstant block:", rep.i.status, rep.i.witness)

# rejection sampling draws until the full report passes; a seed makes
# the draw reproducible
c = sample_compliant(5, 1, 2, 2, seed=7)
print("\nsampled compliant first rows:", list(c.block_first_rows()))
assert validate_all(c, desk_scale=True).strict_ok()

# the systematic parity check [I | C] is what the cryptosystem uses
h = ParityCheck(c)
print("parity check shape:", h.expand().shape, f"(k={h.k}, n={h.n})")
