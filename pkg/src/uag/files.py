"""Readers and writers for the structured text formats.

Signature file:   lines ``op <name> <arity> [infix <prec>]``
Algebra file:     header ``algebra <name> size <n> signature <sigfile>`` then
                  one row-major table per symbol in signature order
                  (n^(arity-1) lines of n integers; one line for constants)
System file:      header ``vars x y z`` then one ``term = term`` per line
Structure file:   header ``palgebra <name> field p^k dim d [assoc] [lie]
                  [comm] [unital <vector>] [twist <power>]`` then d^2 lines
                  of d field elements (row i*d+j is the vector e_i * e_j)

``#`` starts a comment anywhere; blank lines are ignored.  Vectors are
base-q digit strings for q <= 10 and comma-separated digits otherwise.
"""

from __future__ import annotations

import os

from .algebras import FiniteAlgebra
from .errors import FileFormatError
from .fields import FiniteField, automorphism_group, finite_field
from .palgebra import StructureAlgebra, structure_algebra, twist
from .terms import EquationSystem, OpSymbol, Signature, parse_equation, print_term

__all__ = [
    "read_signature",
    "write_signature",
    "read_algebra",
    "write_algebra",
    "read_system",
    "write_system",
    "read_palgebra",
    "write_palgebra",
]


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def read_signature(path: str) -> Signature:
    symbols = []
    for line in _content_lines(open(path).read()):
        parts = line.split()
        if parts[0] != "op" or len(parts) not in (3, 5):
            raise FileFormatError(f"{path}: bad signature line {line!r}")
        name, arity = parts[1], parts[2]
        prec = None
        if len(parts) == 5:
            if parts[3] != "infix":
                raise FileFormatError(f"{path}: expected 'infix', got {parts[3]!r}")
            prec = int(parts[4])
        try:
            symbols.append(OpSymbol(name, int(arity), prec))
        except ValueError:
            raise FileFormatError(f"{path}: bad arity in {line!r}") from None
    return Signature(tuple(symbols))


def write_signature(sig: Signature) -> str:
    lines = []
    for s in sig.symbols:
        if s.infix_prec is not None:
            lines.append(f"op {s.name} {s.arity} infix {s.infix_prec}")
        else:
            lines.append(f"op {s.name} {s.arity}")
    return "\n".join(lines) + "\n"


def read_algebra(path: str) -> FiniteAlgebra:
    lines = _content_lines(open(path).read())
    if not lines:
        raise FileFormatError(f"{path}: empty algebra file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "algebra" or head[2] != "size" or head[4] != "signature":
        raise FileFormatError(f"{path}: bad header {lines[0]!r}")
    name, n = head[1], int(head[3])
    sig_path = os.path.join(os.path.dirname(os.path.abspath(path)), head[5])
    sig = read_signature(sig_path)
    rows = lines[1:]
    tables: dict[str, tuple[int, ...]] = {}
    pos = 0
    for sym in sig.symbols:
        need_lines = n ** max(sym.arity - 1, 0)
        per_line = n if sym.arity >= 1 else 1
        entries: list[int] = []
        for _ in range(need_lines):
            if pos >= len(rows):
                raise FileFormatError(f"{path}: missing table rows for {sym.name!r}")
            vals = rows[pos].split()
            pos += 1
            if len(vals) != per_line:
                raise FileFormatError(
                    f"{path}: table row for {sym.name!r} has {len(vals)} entries, expected {per_line}"
                )
            try:
                entries.extend(int(v) for v in vals)
            except ValueError:
                raise FileFormatError(f"{path}: non-integer table entry for {sym.name!r}") from None
        tables[sym.name] = tuple(entries)
    if pos != len(rows):
        raise FileFormatError(f"{path}: {len(rows) - pos} unexpected trailing rows")
    return FiniteAlgebra(name, n, sig, tables)


def write_algebra(algebra: FiniteAlgebra, sigfile: str) -> str:
    n = algebra.size
    lines = [f"algebra {algebra.name} size {n} signature {sigfile}"]
    for sym in algebra.signature.symbols:
        lines.append(f"# table {sym.name}")
        table = algebra.tables[sym.name]
        if sym.arity == 0:
            lines.append(str(table[0]))
            continue
        per_line = n
        for i in range(0, len(table), per_line):
            lines.append(" ".join(str(v) for v in table[i : i + per_line]))
    return "\n".join(lines) + "\n"


def read_system(path: str, sig: Signature) -> EquationSystem:
    lines = _content_lines(open(path).read())
    if not lines or not lines[0].startswith("vars"):
        raise FileFormatError(f"{path}: system file must start with a 'vars' header")
    vars = tuple(lines[0].split()[1:])
    if not vars:
        raise FileFormatError(f"{path}: empty variable list")
    eqs = tuple(parse_equation(line, sig, vars) for line in lines[1:])
    return EquationSystem(vars, eqs)


def write_system(system: EquationSystem, sig: Signature) -> str:
    lines = ["vars " + " ".join(system.vars)]
    for eq in system.equations:
        lines.append(f"{print_term(eq.lhs, sig)} = {print_term(eq.rhs, sig)}")
    return "\n".join(lines) + "\n"


def _format_vector(vec: tuple[int, ...], q: int) -> str:
    if q <= 10:
        return "".join(str(v) for v in vec)
    return ",".join(str(v) for v in vec)


def _parse_vector(token: str, q: int, d: int) -> tuple[int, ...]:
    if "," in token:
        parts = [int(v) for v in token.split(",")]
    else:
        parts = [int(c) for c in token]
    if len(parts) != d or any(not (0 <= v < q) for v in parts):
        raise FileFormatError(f"bad vector {token!r} for dimension {d} over F{q}")
    return tuple(parts)


def read_palgebra(path: str) -> StructureAlgebra:
    lines = _content_lines(open(path).read())
    if not lines:
        raise FileFormatError(f"{path}: empty structure file")
    head = lines[0].split()
    if len(head) < 6 or head[0] != "palgebra" or head[2] != "field" or head[4] != "dim":
        raise FileFormatError(f"{path}: bad header {lines[0]!r}")
    name = head[1]
    fspec = head[3]
    q = 1
    if "^" in fspec:
        p, k = fspec.split("^")
        q = int(p) ** int(k)
    else:
        q = int(fspec)
    base = finite_field(q)
    d = int(head[5])
    flags = head[6:]
    assoc = comm = lie = False
    unit = None
    twist_power = 0
    i = 0
    while i < len(flags):
        f = flags[i]
        if f == "assoc":
            assoc = True
        elif f == "lie":
            lie = True
        elif f == "comm":
            comm = True
        elif f == "unital":
            i += 1
            unit = _parse_vector(flags[i], q, d)
        elif f == "twist":
            i += 1
            twist_power = int(flags[i])
        else:
            raise FileFormatError(f"{path}: unknown flag {f!r}")
        i += 1
    rows = lines[1:]
    if len(rows) != d * d:
        raise FileFormatError(f"{path}: expected {d * d} constant rows, got {len(rows)}")
    constants = []
    for i in range(d):
        row = []
        for j in range(d):
            vals = rows[i * d + j].split()
            if len(vals) != d:
                raise FileFormatError(f"{path}: constant row {i * d + j} has {len(vals)} entries")
            vec = tuple(int(v) for v in vals)
            if any(not (0 <= v < q) for v in vec):
                raise FileFormatError(f"{path}: constant out of field range in row {i * d + j}")
            row.append(vec)
        constants.append(tuple(row))
    alg = structure_algebra(name, base, d, constants, associative=assoc,
                            commutative=comm, lie=lie, unit=unit)
    if twist_power:
        alg = twist(alg, automorphism_group(base)[twist_power % base.k])
        object.__setattr__(alg, "name", name)
    return alg


def write_palgebra(a: StructureAlgebra) -> str:
    head = [f"palgebra {a.name} field {a.base.p}^{a.base.k} dim {a.dim}"]
    flags = []
    if a.associative:
        flags.append("assoc")
    if a.lie:
        flags.append("lie")
    if a.commutative:
        flags.append("comm")
    if a.unit is not None:
        flags.append(f"unital {_format_vector(a.unit, a.base.q)}")
    if a.scalar_twist is not None and not a.scalar_twist.is_identity:
        flags.append(f"twist {a.scalar_twist.power % a.base.k}")
    header = " ".join(head + flags)
    lines = [header]
    for i in range(a.dim):
        for j in range(a.dim):
            lines.append(" ".join(str(v) for v in a.constants[i][j]))
    return "\n".join(lines) + "\n"
