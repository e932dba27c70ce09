"""Brute-force oracle for the least n with s_n(x, y) = 1 for all x, y.

Uses sympy permutation groups only, independent of engelrad.
Run as a script to print the frozen values used in the acceptance tests.
"""
from itertools import product

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, DihedralGroup, SymmetricGroup
from sympy.combinatorics.perm_groups import PermutationGroup


def sl2_3():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]

    def perm(m):
        img = [vecs.index(((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)) for a, b in vecs]
        return Permutation(img)

    return PermutationGroup([perm([[1, 1], [0, 1]]), perm([[1, 0], [1, 1]])])


def s_step(c, y):
    a = y ** -1 * c ** -1 * y
    return a * c * a ** -1 * c ** -1


def least_n(G, n_max=10):
    elems = list(G.generate())
    ident = Permutation(G.degree - 1)
    vals = [x for x, _ in product(elems, elems)]
    ys = [y for _, y in product(elems, elems)]
    for n in range(1, n_max + 1):
        if all(v == ident for v in vals):
            return n
        vals = [s_step(v, y) for v, y in zip(vals, ys)]
    return None


def s_engel_like_size(G, n_max=60):
    """Number of y with s_n(x, y) = 1 eventually for every x."""
    elems = list(G.generate())
    ident = Permutation(G.degree - 1)
    count = 0
    for y in elems:
        ok = True
        for x in elems:
            c, seen = x, set()
            while c != ident and c not in seen:
                seen.add(c)
                c = s_step(c, y)
            if c != ident:
                ok = False
                break
        count += ok
    return count


GROUPS = {
    "sym:3": lambda: SymmetricGroup(3),
    "sym:4": lambda: SymmetricGroup(4),
    "sl2:3": sl2_3,
    "dihedral:6": lambda: DihedralGroup(6),
    "alt:5": lambda: AlternatingGroup(5),
}

if __name__ == "__main__":
    for name, make in GROUPS.items():
        G = make()
        print(name, G.order(), least_n(G))
    print("sym:5 s-engel-like size", s_engel_like_size(SymmetricGroup(5)))
