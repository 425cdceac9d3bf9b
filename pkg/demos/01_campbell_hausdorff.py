"""
The Campbell-Hausdorff group law in characteristic p
=====================================================

Lie elements of class < p form a group under l1 o l2 = log(exp l1 exp l2),
with truncated exponential and logarithm.  Every element has order p.
"""

from nilpotent_as import LieElt, Universe, ch_compose, gen_D, get_field, group_commutator, trunc_exp

F = get_field(5)
U = Universe(F, 2, 3, (5, 0))
x = LieElt.gen(U, gen_D((1, 0)))
y = LieElt.gen(U, gen_D((2, -1)), 3)

# class 3: x + y + 1/2 [x, y] + 1/12 ([x, [x, y]] + [y, [y, x]])
print("x o y       =", ch_compose(x, y))
print("(x, y)      =", group_commutator(x, y))

# five-fold composition vanishes
print("x o ... o x =", ch_compose(*[x + y] * 5))

# the exponential is a homomorphism into the enveloping algebra mod J^p
print("exp(x)exp(y) == exp(x o y):", trunc_exp(x) * trunc_exp(y) == trunc_exp(ch_compose(x, y)))
