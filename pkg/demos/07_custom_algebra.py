"""Beyond the semisimple case: biderivations of a user-supplied nilpotent algebra.

The four-dimensional filiform algebra [e1,e2] = e3, [e1,e3] = e4 has many
biderivations that are not inner.  The eight-term identity still holds for
all of them, but the commutator symmetry [f(x,y),[u,v]] = [[x,y],f(u,v)]
fails for some symmetric ones.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from exactlie import biderivations as bd
from exactlie.algebra import LieAlgebra

doc = {"dim": 4, "labels": ["e1", "e2", "e3", "e4"], "structure": [[0, 1, 2, "1"], [0, 2, 3, "1"]]}
L = LieAlgebra.from_dict(doc)
space = bd.biderivation_space(L)
print(f"filiform: dim Bider = {space.dim}, skew part = {bd.skew_subspace(space).dim}")
for f in space.maps():
    if not bd.check_identity_four(L, f):
        print("  fails commutator symmetry:", f.to_list(), "| symmetric:", bd.is_symmetric(f),
              "| eight-term identity:", bd.check_identity_eight(L, f))

# The same algebra through the command line.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "filiform.json"
    path.write_text(json.dumps(doc))
    proc = subprocess.run([sys.executable, "-m", "exactlie", "verify", "--input", str(path)], capture_output=True, text=True)
    print("\n" + proc.stdout, end="")
    print("exit code:", proc.returncode)
