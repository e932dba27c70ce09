"""Builtin finite groups and the group file format.

==========  ==========================================  =============
name        realization                                 order
==========  ==========================================  =============
sym:n       (1 2), (1 2 ... n)                          n!
alt:n       3-cycle and an n- or (n-1)-cycle            n!/2
dihedral:n  rotation and reflection of an n-gon         2n
cyclic:n    (1 2 ... n)                                 n
q8          regular quaternion generators on 8 points   8
sl2:q       transvections over GF(q)                    q(q^2-1)
psl2:q      same, modulo scalars                        q(q^2-1)/(2,q-1)
sl3:q       transvections over GF(q)                    q^3(q^3-1)(q^2-1)
psl3:q      same, modulo scalars                        |SL(3,q)|/(3,q-1)
sz:8        Suzuki generators over GF(8) (data file)    29120
a5wr2       (A5 x A5) with the factor swap, 10 points   7200
A*B         direct product on disjoint point sets       |A||B|
==========  ==========================================  =============
"""
from __future__ import annotations

import json
from functools import lru_cache, reduce
from importlib import resources
from math import factorial, gcd
from typing import List, Optional

import numpy as np

from ..errors import BadParams, OrderExceedsCap, SchemaError, ValidationError
from ..exactfield import FieldSpec, finite_field, make_field
from ..fingroup.core import (DEFAULT_ORDER_CAP, FiniteGroup, format_cycles, from_permutations,
                             parse_cycles, trivial_group)
from ..fingroup.matrix import matrix_group

GROUP_NAMES = ["sym:n", "alt:n", "dihedral:n", "cyclic:n", "q8", "sl2:q", "psl2:q", "sl3:q", "psl3:q",
               "sz:8", "a5wr2", "A*B"]


# ---------------------------------------------------------------- descriptors

def _perm_desc(degree: int, cycles: List[str], name: str) -> dict:
    return {"representation": "permutation", "degree": degree, "generators": cycles, "name": name}


def _cycle(points) -> str:
    return "(" + " ".join(str(p) for p in points) + ")" if len(points) > 1 else "()"


def sym_desc(n: int) -> dict:
    if n < 1:
        raise BadParams("sym needs n >= 1")
    gens = [] if n == 1 else (["(1 2)"] if n == 2 else ["(1 2)", _cycle(range(1, n + 1))])
    return _perm_desc(n, gens, f"sym:{n}")


def alt_desc(n: int) -> dict:
    if n < 1:
        raise BadParams("alt needs n >= 1")
    if n < 3:
        gens = []
    elif n == 3:
        gens = ["(1 2 3)"]
    else:
        long = range(1, n + 1) if n % 2 else range(2, n + 1)
        gens = ["(1 2 3)", _cycle(long)]
    return _perm_desc(n, gens, f"alt:{n}")


def dihedral_desc(n: int) -> dict:
    if n < 1:
        raise BadParams("dihedral needs n >= 1")
    if n == 1:
        return _perm_desc(2, ["(1 2)"], "dihedral:1")
    if n == 2:
        return _perm_desc(4, ["(1 2)(3 4)", "(1 3)(2 4)"], "dihedral:2")
    refl = "".join(f"({i} {n + 1 - i})" for i in range(1, n // 2 + 1))
    return _perm_desc(n, [_cycle(range(1, n + 1)), refl], f"dihedral:{n}")


def cyclic_desc(n: int) -> dict:
    if n < 1:
        raise BadParams("cyclic needs n >= 1")
    return _perm_desc(n, [_cycle(range(1, n + 1))] if n > 1 else [], f"cyclic:{n}")


def q8_desc() -> dict:
    return _perm_desc(8, ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], "q8")


def a5wr2_desc() -> dict:
    return _perm_desc(10, ["(1 2 3)", "(1 2 3 4 5)", "(6 7 8)", "(6 7 8 9 10)", "(1 6)(2 7)(3 8)(4 9)(5 10)"],
                      "a5wr2")


def linear_desc(n: int, q: int, projective: bool) -> dict:
    """Elementary transvections I + a E_ij with a running over an additive basis of GF(q)."""
    try:
        field = finite_field(q)
    except Exception:
        raise BadParams(f"{q} is not a prime power") from None
    k = field.spec.k if field.spec.kind == "extension-field" else 1
    basis = [field.parse("[" + ",".join("1" if j == i else "0" for j in range(k)) + "]") if k > 1 else 1
             for i in range(k)]
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for a in basis:
                m = [[field.one if r == c else field.zero for c in range(n)] for r in range(n)]
                m[i][j] = a
                gens.append([[field.format(c) for c in row] for row in m])
    name = ("psl" if projective else "sl") + f"{n}:{q}"
    return {"representation": "matrix", "field": field.spec.to_dict(), "modulo_center": projective,
            "generators": gens, "name": name}


def sz8_desc() -> dict:
    text = resources.files("engelrad.catalog").joinpath("data/sz8.json").read_text()
    return json.loads(text)


def linear_order(n: int, q: int, projective: bool) -> int:
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - 1
    return o // gcd(n, q - 1) if projective else o


def builtin_descriptor(name: str) -> dict:
    name = name.strip()
    if "*" in name:
        parts = [builtin_descriptor(p) for p in name.split("*")]
        return {"representation": "product", "factors": parts, "name": name}
    base, _, arg = name.partition(":")
    base = base.lower()

    def num():
        try:
            return int(arg)
        except ValueError:
            raise BadParams(f"{base} needs an integer parameter, e.g. {base}:5") from None

    if base in ("sym", "s"):
        return sym_desc(num())
    if base in ("alt", "a"):
        return alt_desc(num())
    if base in ("dihedral", "d"):
        return dihedral_desc(num())
    if base in ("cyclic", "c"):
        return cyclic_desc(num())
    if base in ("q8", "quaternion8"):
        return q8_desc()
    if base in ("sl2", "psl2", "sl3", "psl3"):
        return linear_desc(int(base[-1]), num(), base.startswith("p"))
    if base == "sz":
        if num() != 8:
            raise BadParams("only sz:8 is available")
        return sz8_desc()
    if base == "a5wr2":
        return a5wr2_desc()
    raise BadParams(f"unknown group {name!r}")


_EXPECTED_ORDERS = {
    "sym": lambda n: factorial(n),
    "alt": lambda n: max(1, factorial(n) // 2),
    "dihedral": lambda n: 2 * n,
    "cyclic": lambda n: n,
}


def expected_order(name: str) -> Optional[int]:
    if "*" in name:
        parts = [expected_order(p) for p in name.split("*")]
        return None if None in parts else reduce(lambda a, b: a * b, parts, 1)
    base, _, arg = name.partition(":")
    base = base.lower()
    if base in _EXPECTED_ORDERS:
        return _EXPECTED_ORDERS[base](int(arg))
    if base in ("sl2", "psl2", "sl3", "psl3"):
        return linear_order(int(base[-1]), int(arg), base.startswith("p"))
    if base == "sz":
        q = int(arg)
        return q * q * (q * q + 1) * (q - 1)
    return {"q8": 8, "quaternion8": 8, "a5wr2": 7200}.get(base)


def builtin_group(name: str, params: Optional[dict] = None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Enumerate a named group and check its order when a closed form is known."""
    if params:
        extra = params.get("n", params.get("q"))
        if extra is not None and ":" not in name:
            name = f"{name}:{extra}"
    return _builtin_group(name.strip(), cap)


@lru_cache(maxsize=64)
def _builtin_group(name: str, cap: int) -> FiniteGroup:
    desc = builtin_descriptor(name)
    G = group_from_descriptor(desc, cap=cap, name=name)
    want = expected_order(name)
    if want is not None and G.order != want:
        raise AssertionError(f"{name}: enumerated order {G.order}, expected {want}")
    return G


# ---------------------------------------------------------------- file format

def _loc(where: str, msg: str) -> str:
    return f"{where}: {msg}"


def group_from_descriptor(desc: dict, cap: int = DEFAULT_ORDER_CAP, name: Optional[str] = None,
                          where: str = "$") -> FiniteGroup:
    if not isinstance(desc, dict):
        raise SchemaError(_loc(where, "group description must be an object"))
    rep = desc.get("representation")
    name = name or desc.get("name") or "G"
    if rep == "permutation":
        gens = desc.get("generators")
        degree = desc.get("degree")
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise SchemaError(_loc(f"{where}.generators", "expected a list of cycle-notation strings"))
        if degree is not None and (not isinstance(degree, int) or degree < 1):
            raise SchemaError(_loc(f"{where}.degree", "expected a positive integer"))
        perms = []
        for i, g in enumerate(gens):
            try:
                perms.append(parse_cycles(g, degree))
            except ValueError as exc:
                raise ValidationError(_loc(f"{where}.generators[{i}]", str(exc))) from None
        deg = degree or max((len(p) for p in perms), default=1)
        if not perms:
            G = trivial_group(name)
            G.descriptor = desc
            return G
        return from_permutations(perms, deg, cap=cap, name=name, descriptor=desc)
    if rep == "matrix":
        try:
            field = make_field(FieldSpec.from_dict(desc.get("field") or {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(_loc(f"{where}.field", f"bad field description ({exc})")) from None
        if not field.is_finite:
            raise ValidationError(_loc(f"{where}.field", "matrix groups need a finite field"))
        gens = desc.get("generators")
        if not isinstance(gens, list) or not gens:
            raise SchemaError(_loc(f"{where}.generators", "expected a nonempty list of matrices"))
        mats = []
        for i, g in enumerate(gens):
            if not isinstance(g, list) or not all(isinstance(r, list) for r in g):
                raise SchemaError(_loc(f"{where}.generators[{i}]", "expected a list of rows"))
            try:
                mats.append([[field.parse(str(c)) for c in r] for r in g])
            except Exception as exc:
                raise ValidationError(_loc(f"{where}.generators[{i}]", str(exc))) from None
        try:
            return matrix_group(field, mats, modulo_center=bool(desc.get("modulo_center", False)),
                                cap=cap, name=name, descriptor=desc)
        except ValidationError as exc:
            raise ValidationError(_loc(f"{where}.generators", str(exc))) from None
    if rep == "product":
        factors = desc.get("factors")
        if not isinstance(factors, list) or not factors:
            raise SchemaError(_loc(f"{where}.factors", "expected a nonempty list of groups"))
        groups = [group_from_descriptor(f, cap, where=f"{where}.factors[{i}]") for i, f in enumerate(factors)]
        return direct_product(groups, cap=cap, name=name, descriptor=desc)
    raise SchemaError(_loc(f"{where}.representation", f"unknown representation {rep!r}"))


def direct_product(groups: List[FiniteGroup], cap: int = DEFAULT_ORDER_CAP, name: str = "G",
                   descriptor: Optional[dict] = None) -> FiniteGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    total = reduce(lambda a, b: a * b, (g.order for g in groups), 1)
    if total > cap:
        raise OrderExceedsCap(f"product order {total} exceeds cap {cap}")
    offsets = np.cumsum([0] + [g.degree for g in groups])
    degree = int(offsets[-1])
    gens = []
    for k, g in enumerate(groups):
        for p in g.gen_perms:
            full = list(range(degree))
            for i, v in enumerate(p):
                full[offsets[k] + i] = offsets[k] + int(v)
            gens.append(full)

    def label(G, a):
        row = G.perms[a]
        parts = []
        for k, g in enumerate(groups):
            block = row[offsets[k]:offsets[k + 1]] - offsets[k]
            parts.append(g.label_text(int(g.index_of(block[None, :].astype(g.perms.dtype))[0])))
        return "(" + ", ".join(parts) + ")"

    G = from_permutations(gens, degree, cap=cap, name=name, descriptor=descriptor, labeler=label, kind="product")
    G.extra["factors"] = groups
    if G.order != total:
        raise AssertionError("direct product has the wrong order")
    return G


def group_descriptor(G: FiniteGroup) -> dict:
    """Descriptor for export: the construction recipe, or the generating permutations."""
    if G.descriptor is not None:
        return G.descriptor
    return {"representation": "permutation", "degree": G.degree,
            "generators": [format_cycles(p) for p in G.gen_perms], "name": G.name}
