"""
Presentations of the two-dimensional examples
=============================================

The characteristic p field with E(omega^p) = 1 + t^(5,0), and the
cyclotomic field Q_5(zeta_1){{pi_2}} in group form.  The relation lists are
compared with the reference transcriptions; the differences are the terms listed by
reference_list_omissions.
"""

from nilpotent_as import GeneratorWindow, char0_presentation, char0_setup, emit, relations_mod_C3
from nilpotent_as.checks import reference_list_omissions, relation_differences, simplest_setup
from nilpotent_as.presentation import reference_simplest_relations, reference_zeta_group_relations

setup = simplest_setup(5, box=1)
pres = relations_mod_C3(setup)
print(emit(pres, "text"))

zeta = char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=GeneratorWindow(5, (5, 0), 2, 1))
group = char0_presentation(zeta, "group")
print(emit(group, "text"))

for box in (1, 3):
    s = simplest_setup(5, box=box)
    d = relation_differences(relations_mod_C3(s).relations, reference_simplest_relations(s))
    print(f"box {box}: char-p list differs at {sorted(d)}; predicted: {d == reference_list_omissions(s)}")
    z = char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=s.window)
    d = relation_differences(char0_presentation(z, "group").relations, reference_zeta_group_relations(z), group=True)
    print(f"box {box}: group list differs at {sorted(d)}; predicted: {d == reference_list_omissions(z, True)}")
