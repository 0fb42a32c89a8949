"""Walk through the person example from both sides of the runtime.

    python demos/person_interop.py
"""

from dualrt import RUBY, SMALLTALK, Runtime
from dualrt.bridges import Signature
from dualrt.errors import ArgumentError
from dualrt.ir import read

rt = Runtime()
Person = rt.new_class("Person", "Person", rt.space.Object)

# Ruby side: set_name(last, first = "")
rt.define(Person, RUBY, "set_name", "(seq (ivar= first (arg 1)) (ivar= last (arg 0)) self)",
          signature=Signature(1, (("first", read('""')),)))
rt.define(Person, RUBY, "full_name", '(send [(ivar first) (ivar last)] join " ")')

entries = sorted(k for k in Person.mdicts[RUBY] if k.startswith("set_name#"))
print(f"set_name installed {len(entries)} bridge entries:")
for key in entries:
    print(f"  {key:14} {Person.mdicts[RUBY][key].role}")

john = rt.new_instance(Person)
rt.st_call_ruby(john, "@ruby1:set_name:_:", ["Doe", "John"])
print("from Smalltalk via @ruby1:  ", rt.st_call_ruby(john, "@ruby1:full_name"))

wrapped = rt.wrap(john)
print("from Smalltalk via wrapper: ", rt.send(wrapped, "full_name", env=SMALLTALK))

try:
    rt.send(john, "set_name", ["a", "b", "c"])
except ArgumentError as exc:
    print("three arguments:            ", exc)

# Smalltalk side, exposed to Ruby through primitives
Account = rt.new_class("Account", "Account", rt.space.Object, ("owner",))
rt.define(Account, SMALLTALK, "owner:", "(seq (ivar= owner (arg 0)) self)")
rt.define(Account, SMALLTALK, "owner", "(ivar owner)")
rt.primitive(Account, "owner=", "owner:")
rt.primitive(Account, "owner", "owner")
acct = rt.new_instance(Account)
rt.send(acct, "owner=", ["Jane"])
print("primitive round trip:       ", rt.send(acct, "owner"))
print("Ruby sees the static slot:  ", rt.space.instance_variables(acct, RUBY))
