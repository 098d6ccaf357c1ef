"""
Key generation, encryption, decryption
======================================

The plaintext is a binary vector of weight at most e. Encryption is a
syndrome computation against the scrambled public matrix; decryption
undoes the row scrambler and looks the syndrome up in an exhaustive
table, which is what pins e: the largest weight where the map stays
injective.
"""

import numpy as np

from qcnied import ParityCheck, error_capacity, keygen, encrypt, decrypt
from qcnied import sample_compliant

c = sample_compliant(5, 1, 2, 2, seed=3)
h = ParityCheck(c)

cap = error_capacity(h)
print("error capacity e =", cap.e, "table size", len(cap.table))

priv, pub = keygen(h, seed=9, cap=cap)

# the public matrix is the private one with rows mixed by an invertible
# binary matrix and columns permuted; it looks nothing like [I | C]
print("private [I|C] first row:", h.expand()[0])
print("public  H'    first row:", pub.hprime[0])
assert not np.array_equal(h.expand(), pub.hprime)

x = [0] * pub.n
x[0] = x[3] = 1
y = encrypt(pub, x)
print("ciphertext:", y)

back = decrypt(priv, cap, y)
assert tuple(back) == tuple(x)
print("recovered support:", [j for j, bit in enumerate(back) if bit])

# every weight up to e roundtrips; weight e + 1 may collide, which is
# exactly why e stops where it does
import itertools

count = 0
for w in range(cap.e + 1):
    for sup in itertools.combinations(range(pub.n), w):
        x = [1 if j in sup else 0 for j in range(pub.n)]
        assert tuple(decrypt(priv, cap, encrypt(pub, x))) == tuple(x)
        count += 1
print(f"verified {count} plaintexts up to weight {cap.e}")
