"""
Reports for the command line.

A Report carries the verdict of one command, its witnesses, and an optional
pandas table (atoms, factorizations, residues, ...). It renders as text (with
timing), as deterministic JSON (without timing), and exports its table as CSV.

Functions:
    - vector, describe: formatting of divisors with element names
    - atoms_table, factorizations_table, residues_table: pandas tables

Dependencies:
    - pandas
"""

import json
from dataclasses import dataclass, field

import pandas as pd

HOLDS = 0
FAILS = 1


def vector(v):
    """Plain list form of a divisor or tuple, for JSON."""
    return [int(x) for x in v]


def describe(v, parsed=None):
    """``(1,0,0,1) = x`` when the vector is a named element, else ``(1,0,0,1)``."""
    text = "(" + ",".join(str(int(x)) for x in v) + ")"
    name = parsed.name_of(v) if parsed is not None else None
    return f"{text} = {name}" if name else text


def _label(v, parsed):
    name = parsed.name_of(v) if parsed is not None else None
    return name or "(" + ",".join(str(int(x)) for x in v) + ")"


@dataclass
class Report:
    """Outcome of one command."""

    command: str
    verdict: str
    exit_code: int = HOLDS
    bound: int = None
    budget: int = None
    witnesses: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    table: pd.DataFrame = None
    elapsed: float = None

    def to_dict(self):
        """Machine-readable form: every witness, no timing."""
        data = {
            "command": self.command,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "bound": self.bound,
            "budget": self.budget,
            "witnesses": self.witnesses,
        }
        if self.table is not None:
            data["table"] = self.table.to_dict(orient="records")
        return data

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    def to_text(self):
        out = [f"{self.command}: {self.verdict}"]
        if self.bound is not None:
            out.append(f"  (up to degree {self.bound}, budget {self.budget})")
        out.extend(f"  {line}" for line in self.lines)
        if self.table is not None and not self.table.empty:
            out.append(self.table.to_string(index=False))
        if self.elapsed is not None:
            out.append(f"[{self.elapsed:.3f} s]")
        return "\n".join(out)

    def write_csv(self, path):
        frame = self.table if self.table is not None else pd.DataFrame([self.witnesses])
        frame.to_csv(path, index=False)


# -----------------------------------------------------------------------------
# Tables
# -----------------------------------------------------------------------------
def atoms_table(atoms, parsed=None):
    """One row per atom: index, name, exponents, degree and support size."""
    rows = [
        {
            "index": i,
            "name": (parsed.name_of(a) if parsed is not None else None) or "",
            "exponents": str(a),
            "degree": a.degree,
            "eta": len(a.support),
        }
        for i, a in enumerate(atoms)
    ]
    df = pd.DataFrame(rows, columns=["index", "name", "exponents", "degree", "eta"])
    return df


def factorizations_table(found, atom_list, parsed=None):
    """One row per factorization: its length and its atoms."""
    rows = [
        {
            "length": f.length,
            "atoms": " * ".join(_label(atom_list[i], parsed) for i in f.indices),
            "indices": " ".join(str(i) for i in f.indices),
        }
        for f in found
    ]
    return pd.DataFrame(rows, columns=["length", "atoms", "indices"])


def residues_table(residues, splittings=()):
    """Minimal fractional elements w and, where known, a splitting w = u + v."""
    split = {tuple(w): (u, v) for w, u, v in splittings}
    rows = []
    for w in residues:
        u, v = split.get(tuple(w), (None, None))
        rows.append({
            "w": str(w),
            "u": str(u) if u is not None else "",
            "v": str(v) if v is not None else "",
        })
    return pd.DataFrame(rows, columns=["w", "u", "v"])


def polynomials_table(factorizations):
    """One row per factorization of a polynomial into subring irreducibles."""
    rows = [
        {"length": len(blocks), "factors": " | ".join(f"({b})" for b in blocks)}
        for blocks in factorizations
    ]
    return pd.DataFrame(rows, columns=["length", "factors"])
