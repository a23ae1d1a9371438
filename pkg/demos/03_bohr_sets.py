"""
Bohr sets in two metrics
========================

A Bohr set collects the group elements where a handful of characters stay
close to their value at the center.  Two distance conventions are
supported; conversion between them shrinks the radius by 2*pi.
"""

from bohrlab import (
    FORM_CHAR,
    BohrSpec,
    Char,
    Elem,
    GroupSpec,
    Hom,
    bohr_enumerate,
    bohr_member,
    char_form_to_torus_form,
    elem_add,
    enumerate_elems,
    halve_radius,
    hom_apply,
    pullback,
)

g = GroupSpec((8,))

b = BohrSpec(group=g, freqs=(Char((4,)),), radius=0.5, form=FORM_CHAR, center=Elem((0,)))
print("char-form Bohr set, freq 4, radius 0.5 on Z8:")
print("  members:", [str(e) for e in bohr_enumerate(b)])

# the torus form measures |t.z/n mod 1| instead of |chi(z) - 1|
tb = char_form_to_torus_form(b)
print(f"converted torus radius: {tb.radius:.6f}")
print("  members:", [str(e) for e in bohr_enumerate(tb)])
# conversion can only shrink the member set, never grow it

print("0 is always a member:", bohr_member(b, Elem((0,))))

# halving the radius gives a set whose pairwise sums stay in the original
hb = halve_radius(b)
small = bohr_enumerate(hb)
print("halved-radius members:", [str(e) for e in small])
for x in small:
    for y in small:
        assert bohr_member(b, elem_add(g, x, y))
print("sum of any two halved members lands back in the parent set")

# pulling back along a homomorphism Z4 -> Z8, x -> 2x: composing chi_3
# with the map gives a character of Z4, computed exactly in rationals
b3 = BohrSpec(group=g, freqs=(Char((3,)),), radius=1.0, form=FORM_CHAR, center=Elem((0,)))
phi = Hom(GroupSpec((4,)), g, images=(Elem((2,)),))
pb = pullback(b3, phi)
print(f"pullback of a freq-3 set to Z4: freqs {[str(t) for t in pb.freqs]}, radius {pb.radius}")
print("  members:", [str(e) for e in bohr_enumerate(pb)])
for x in enumerate_elems(GroupSpec((4,))):
    assert bohr_member(pb, x) == bohr_member(b3, hom_apply(phi, x))
