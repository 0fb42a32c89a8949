"""Singleton classes appear only when asked for, one level at a time.

    python demos/singleton_levels.py
"""

from dualrt import Runtime, singleton

rt = Runtime()
space = rt.space
Person = rt.new_class(None, "Person", space.Object)
john = rt.new_instance(Person)

print(f"after bootstrap and one class: {len(space.classes())} classes")
for depth in (1, 2, 3):
    before = len(space.classes())
    singleton.ensure_singleton_generated(space, john, depth)
    made = len(space.classes()) - before
    print(f"ensure(john, {depth}) made {made} more classes (max_gen {singleton.max_gen(space, john)})")

print()
print(rt.inspect_hierarchy(john))

# classes deep below Object outgrow the bound once three levels are requested
print()
for depth in range(1, 6):
    fresh = Runtime()
    cls = fresh.space.Object
    for i in range(depth):
        cls = fresh.new_class(None, f"Deep{i}", cls)
    before = len(fresh.space.classes())
    singleton.ensure_singleton_generated(fresh.space, cls, 3)
    made = len(fresh.space.classes()) - before
    bound = singleton.max_gen(fresh.space, cls) + 1
    print(f"ensure(class {depth} below Object, 3): made {made}, bound {bound}")
