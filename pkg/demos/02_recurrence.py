"""
Solving the recurrence for the elements V_a
===========================================

For p = 5, N = 2 and E(omega^p) = 1 + t^(5,0), solve depth by depth and
compare with the closed forms mod C3.  Then compute the commutator of the
two extended generators mod C4.
"""

import time

from nilpotent_as import GeneratorWindow, Omega, Setup, bracket_lij, closed_form_Va, get_field, solve_c1
from nilpotent_as.presentation import presentation_universe
from nilpotent_as.solver import rehome

F = get_field(5)
omega = Omega(F, (1, 0), {(0, 0): 1}, kind="A")
setup = Setup(omega, 2, GeneratorWindow(5, (5, 0), 2, 2))
U = presentation_universe(setup)

sol = solve_c1(setup, 2)
a = (0, 1)
print("V_(0,1) from the recurrence:", rehome(sol.V_at(a), U))
print("closed form agrees:", rehome(sol.V_at(a), U) == closed_form_Va(setup, 2, a, U))

v, _ = bracket_lij(solve_c1(setup, 1), sol)
print("l[1,2] mod C3:", v)

# class 3 on a small window; takes under a minute
start = time.perf_counter()
deep = Setup(omega, 3, GeneratorWindow(5, (5, 0), 3, 1))
v, _ = bracket_lij(solve_c1(deep, 1), solve_c1(deep, 2))
print(f"l[1,2] mod C4: {v}  ({time.perf_counter() - start:.0f}s)")
