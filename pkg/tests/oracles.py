"""Reference computations that share no code with the package.

Clifford products are computed by literally rewriting generator words
(swap adjacent distinct generators with a sign, contract equal neighbours
to their square), quaternion products come from a hand-written table, and
involution types come from counting symmetric blades.  Everything is in
``fractions.Fraction``.
"""

from fractions import Fraction
from itertools import product


def word_product(word, coeffs):
    """Reduce a generator word (0-based indices) to (coefficient, sorted tuple)."""
    w = list(word)
    c = Fraction(1)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] == w[k + 1]:
                c *= Fraction(coeffs[w[k]])
                del w[k:k + 2]
                changed = True
                break
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                c = -c
                changed = True
                break
    return c, tuple(w)


def mask_word(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def word_mask(word):
    m = 0
    for i in word:
        m |= 1 << i
    return m


def blade_product(S, T, coeffs):
    """e_S * e_T as {mask: Fraction}."""
    c, w = word_product(mask_word(S) + mask_word(T), coeffs)
    return {word_mask(w): c}


def element_product(x, y, coeffs):
    out = {}
    for S, a in x.items():
        for T, b in y.items():
            for U, c in blade_product(S, T, coeffs).items():
                out[U] = out.get(U, 0) + Fraction(a) * Fraction(b) * c
    return {k: v for k, v in out.items() if v}


def involution_on_blade(signs, mask):
    """J^sigma(e_S) as a sign: reverse the word, then apply the symmetry letterwise."""
    w = mask_word(mask)
    sign = 1
    for i in w:
        sign *= signs[i]
    c, _ = word_product(list(reversed(w)), [1] * len(signs))
    return sign * int(c)


def clifford_type_by_counting(signs):
    """Type of J^sigma on C(q), n even, from the number of symmetric blades."""
    n = len(signs)
    d = 2 ** (n // 2)
    sym = sum(1 for mask in range(1 << n) if involution_on_blade(signs, mask) > 0)
    if sym == d * (d + 1) // 2:
        return "orthogonal"
    if sym == d * (d - 1) // 2:
        return "symplectic"
    return None


# Quaternion (a, b): basis 1, i, j, k with i^2 = a, j^2 = b, k = ij.
def quaternion_table(a, b):
    a, b = Fraction(a), Fraction(b)
    t = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (a, 0), (1, 2): (1, 3), (1, 3): (a, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (b, 0), (2, 3): (-b, 1),
        (3, 0): (1, 3), (3, 1): (-a, 2), (3, 2): (b, 1), (3, 3): (-a * b, 0),
    }
    return t


def quaternion_mul(x, y, a, b):
    t = quaternion_table(a, b)
    out = [Fraction(0)] * 4
    for i, j in product(range(4), repeat=2):
        c, k = t[(i, j)]
        out[k] += Fraction(x[i]) * Fraction(y[j]) * c
    return out


def signed_disc(coeffs):
    n = len(coeffs)
    p = Fraction(1)
    for c in coeffs:
        p *= Fraction(c)
    return p * (-1) ** (n * (n - 1) // 2)
