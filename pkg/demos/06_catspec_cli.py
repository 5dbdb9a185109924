"""The catspec format and the ``profcat`` command line, driven from Python.

Equivalent shell session::

    profcat generate 'one_object_monoid(left_zero)' --out lz.cat
    profcat check-trace lz.cat            # exit 1, sliding witness (x, y)
    profcat check-trace lz.cat --format machine
"""

import json
import tempfile
from pathlib import Path

from profcat.cli import main
from profcat.spec import build, generate_example, parse_spec, serialize

doc = generate_example("one_object_monoid(idempotent)")
text = serialize(doc)
print(text)
assert serialize(parse_spec(text)) == text

tmp = Path(tempfile.mkdtemp())
lz = tmp / "lz.cat"
main(["generate", "one_object_monoid(left_zero)", "--out", str(lz)])
code = main(["check-trace", str(lz)])
print("exit", code)

out = tmp / "lz.json"
main(["check-trace", str(lz), "--format", "machine", "--out", str(out)])
report = json.loads(out.read_text())
print([(law["law"], law["witness"]) for s in report["sections"] for law in s["laws"]
       if law["status"] == "FAIL"])

# a hand-written spec: the eM module over {1, e}
em = tmp / "em.cat"
em.write_text("""\
name: eM over {1,e}
objects: pt
morphisms: 1: pt->pt, e: pt->pt
identity: pt=1
compose: 1;1=1, 1;e=e, e;1=e, e;e=e
profunctor M: base -> point
M.elements: m@pt|*
M.ract: e@m=m
""")
print(build(parse_spec(em.read_text())).profunctors["M"].n, "element")
print("exit", main(["prof-represent", str(em)]))

# chain: no trace, so rotation is refused (exit 2) and delta is out of hypothesis (exit 0)
chain = tmp / "chain.cat"
main(["generate", "lukasiewicz_chain(3)", "--out", str(chain)])
print("exit", main(["check-delta", str(chain)]))
