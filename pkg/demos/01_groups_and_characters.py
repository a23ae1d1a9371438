"""
Groups, elements, characters
============================

A quick tour of the finite abelian group layer: building a product of
cyclic factors, ranking elements in canonical order, and pairing elements
against characters.
"""

from bohrlab import (
    Char,
    Elem,
    GroupSpec,
    char_eval,
    elem_add,
    elem_neg,
    enumerate_elems,
    pairing,
    parse_group,
    torus_norm,
)

# groups are products of cyclic factors, written "n1xn2x..."
g = parse_group("4x3")
print(f"group {g}, order {g.order}, {g.ndim} factor(s)")

# canonical order is lexicographic on coordinate tuples
print("first six elements:", [str(e) for e in enumerate_elems(g)[:6]])

a = Elem((3, 2))
b = Elem((2, 2))
print(f"{a} + {b} = {elem_add(g, a, b)}")   # wraps coordinate-wise
print(f"-{a} = {elem_neg(g, a)}")

# pairing(t, z) is the phase of the character chi_t at z, as a fraction of
# a full turn; char_eval exponentiates it
t = Char((1, 1))
for z in enumerate_elems(g)[:4]:
    ph = pairing(g, t, z)
    print(f"  chi_{t}({z}) = exp(2 pi i * {ph:.4f}) = {char_eval(g, t, z):.4f}")

# torus_norm measures distance to the nearest integer -- the metric used
# for torus-form Bohr sets
for x in (0.1, 0.5, 0.9, 1.3):
    print(f"torus_norm({x}) = {torus_norm(x)}")

print()
print("same machinery, single factor:", GroupSpec((12,)), "order", GroupSpec((12,)).order)
