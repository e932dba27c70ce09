"""Enumerated finite groups: closures, radicals, Engel-like sets, holomorphs."""
from .core import (DEFAULT_ORDER_CAP, FiniteGroup, format_cycles, from_permutations, parse_cycles,
                   trivial_group)
from .cr import IsotypicComponent, cr_radical, cr_report, minimal_normal_subgroups
from .engel import engel_like_set, evaluate, identity_holds, reaches_identity, sequence_values
from .holomorph import (Automorphism, conjugation_automorphism, engel_automorphism_test,
                        identity_automorphism, inner_automorphism, semidirect_product, swap_automorphism)
from .matrix import element_matrix, matrix_group
from .subgroups import (SubgroupHandle, closure, derived_series, fitting_subgroup, lower_central_series,
                        normal_closure, quotient, solvable_radical, whole)


def make_group(generators, representation: str = "permutation", cap: int = DEFAULT_ORDER_CAP, **kw) -> FiniteGroup:
    """Enumerate the group generated by permutations (image lists or cycle strings) or matrices."""
    if representation == "permutation":
        degree = kw.get("degree")
        perms = [parse_cycles(g, degree) if isinstance(g, str) else list(g) for g in generators]
        if not perms:
            return trivial_group()
        return from_permutations(perms, degree, cap=cap, name=kw.get("name", "G"))
    if representation == "matrix":
        return matrix_group(kw["field"], generators, modulo_center=kw.get("modulo_center", False), cap=cap,
                            name=kw.get("name", "G"))
    raise ValueError(f"unknown representation {representation!r}")
