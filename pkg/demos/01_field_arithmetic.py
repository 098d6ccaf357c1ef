"""
Arithmetic in GF(2^eta)
=======================

Every entry of a circulant block lives in a small binary field. A
FieldCtx pins the extension degree eta and the defining modulus; all
operations are plain integers under the hood, with addition as XOR and
multiplication reduced modulo the irreducible polynomial.
"""

from qcnied import FieldCtx, default_modulus, is_irreducible
from qcnied.errors import ReducibleModulus

# The default modulus for each degree is the smallest odd irreducible
# polynomial, so contexts built from eta alone are reproducible.
for eta in range(1, 9):
    print(f"eta={eta}  modulus={default_modulus(eta):#x}")

# GF(4): the unique irreducible quadratic is x^2 + x + 1 = 0b111.
gf4 = FieldCtx(2)
print("\nGF(4) multiplication table")
for a in gf4.elements():
    print(" ".join(gf4.format_hex(gf4.mul(a, b)) for b in gf4.elements()))

# alpha * alpha = alpha + 1 is forced by the modulus
alpha = 2
assert gf4.mul(alpha, alpha) == alpha ^ 1

# characteristic 2: everything is its own additive inverse
assert all(gf4.add(a, a) == 0 for a in gf4.elements())

# inverses pair up the nonzero elements
print("\ninverses in GF(16):")
gf16 = FieldCtx(4)
for a in gf16.nonzero():
    b = gf16.inv(a)
    assert gf16.mul(a, b) == 1
    print(f"  {gf16.format_hex(a)} * {gf16.format_hex(b)} = 1")

# A reducible modulus is rejected at construction. x^2 + 1 factors as
# (x + 1)^2 over F2, so it cannot define a field.
assert not is_irreducible(0b101)
try:
    FieldCtx(2, 0b101)
except ReducibleModulus as exc:
    print("\nrejected:", exc)

# Hex tokens are fixed width and lowercase; parse is strict about both.
ctx = FieldCtx(9)
tok = ctx.format_hex(0x1ab)
print(f"\neta=9 token for 0x1ab: {tok!r} (width {len(tok)})")
assert ctx.parse_hex(tok) == 0x1ab
