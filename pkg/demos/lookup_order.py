"""Lookup order with modules and singleton classes, checked against the oracle.

    python demos/lookup_order.py [seeds]
"""

import sys

from dualrt import RUBY, Runtime, properties

rt = Runtime()
space = rt.space
Base = rt.new_class(None, "Base", space.Object)
A = rt.new_class(None, "A", Base)
M1, M2 = rt.new_module("M1"), rt.new_module("M2")
for mod, text in ((M1, '"M1"'), (M2, '(concat "M2>" (super))'), (Base, '"Base"')):
    rt.define(mod, RUBY, "who", text)
rt.include(A, M1)
rt.include(A, M2)
a = rt.new_instance(A)
rt.define(rt.singleton_class(a), RUBY, "who", '(concat "a>" (super))')

print("chain of a:")
for cls in space.chain(space.virtual_class(a), RUBY):
    print("  " + rt.describe(cls))
print("a.who =>", rt.describe(rt.send(a, "who")))

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 50
agree = probes = 0
for seed in range(seeds):
    got, total, _ = properties.check_lookup(seed)
    agree += got
    probes += total
print(f"random hierarchies: {agree}/{probes} probes agree with the oracle over {seeds} seeds")
