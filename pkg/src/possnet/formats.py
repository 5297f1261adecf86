"""Line-oriented text formats for networks (.pnet), fuzzy networks (.pfnet)
and local knowledge-base sets (.pkb).

Network files::

    network table1
    var A
    var B
    parents B: A
    cell A: a pi=1 n=0.6
    cell B: b | a pi=1 n=0.5
    cell B: b | else pi=0.75 n=0.2

Fuzzy networks use the same grammar with ``n=lower/peak/upper`` and an
optional ``mu=LABEL`` naming a shared membership function.

Knowledge-base files::

    network table1
    kb SA for A
    clause a alpha=0.5 beta=0.9
    kb SB for B given A
    clause b | a alpha=0.7 beta=1

Blank lines are ignored and ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .fuzzy import FuzzyCell, FuzzyNetwork, FuzzyNode, TriangularDegree
from .kb import AverageKB, WeightedFormula
from .logic import Clause, Literal, LogicError, TautologyError, Variable
from .network import (
    ELSE,
    ConditionalCell,
    JointTable,
    NetworkNode,
    PossibilisticNetwork,
    joint_table,
)
from .transform import LocalKB, LocalKBSet


@dataclass(frozen=True)
class SourceSpan:
    """1-based line and column range; ``end`` is exclusive and ``end > start``."""

    file: str
    line: int
    start: int
    end: int

    def __post_init__(self):
        if self.line < 1 or self.start < 1 or self.end <= self.start:
            raise ValueError("source spans are 1-based and never empty")

    def __str__(self):
        return f"{self.file}:{self.line}:{self.start}"


@dataclass(frozen=True)
class Diagnostic:
    message: str
    span: SourceSpan

    def __str__(self):
        return f"{self.span}: {self.message}"


class FormatError(ValueError):
    """Raised with every diagnostic collected while parsing a document."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Document:
    value: Union[PossibilisticNetwork, FuzzyNetwork, LocalKBSet]
    spans: dict = field(default_factory=dict, compare=False)


# -- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(r"[^\s:|]+|[:|]")


@dataclass
class _Tok:
    text: str
    col: int  # 1-based

    @property
    def end(self):
        return self.col + len(self.text)


class _Reader:
    def __init__(self, text: str, filename: str):
        self.filename = filename
        self.diagnostics: list[Diagnostic] = []
        self.lines = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [_Tok(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
            if toks:
                self.lines.append((lineno, toks, raw))

    def span(self, lineno: int, tok: Optional[_Tok] = None, raw: str = "") -> SourceSpan:
        if tok is None:
            return SourceSpan(self.filename, lineno, 1, max(2, len(raw.rstrip()) + 1))
        return SourceSpan(self.filename, lineno, tok.col, tok.end)

    def error(self, message: str, lineno: int, tok: Optional[_Tok] = None, raw: str = ""):
        self.diagnostics.append(Diagnostic(message, self.span(lineno, tok, raw)))

    def finish(self):
        if self.diagnostics:
            raise FormatError(self.diagnostics)


def _split_fields(toks: list[_Tok]):
    """Separate positional tokens from trailing ``key=value`` tokens."""
    for i, t in enumerate(toks):
        if "=" in t.text:
            return toks[:i], toks[i:]
    return toks, []


def _key_values(reader, lineno, toks, allowed):
    values = {}
    for t in toks:
        key, sep, val = t.text.partition("=")
        if not sep or not val:
            reader.error(f"expected key=value, got {t.text!r}", lineno, t)
            continue
        if key not in allowed:
            reader.error(f"unknown field {key!r}; expected {', '.join(allowed)}", lineno, t)
            continue
        if key in values:
            reader.error(f"field {key!r} given twice", lineno, t)
            continue
        values[key] = (val, t)
    return values


def _number(reader, lineno, text, tok, what) -> Optional[float]:
    try:
        value = float(text)
    except ValueError:
        reader.error(f"{what}: {text!r} is not a number", lineno, tok)
        return None
    if not (0.0 <= value <= 1.0):
        reader.error(f"{what} {text} is outside [0, 1]", lineno, tok)
        return None
    return value


class _Scope:
    """Variable declarations, indexed by name and by literal label."""

    def __init__(self):
        self.names: list[str] = []
        self.by_label: dict[str, str] = {}

    def declare(self, reader, lineno, tok) -> bool:
        name = tok.text
        try:
            Variable(name)
        except LogicError as exc:
            reader.error(str(exc), lineno, tok)
            return False
        if name.lower() in self.by_label:
            reader.error(f"variable {name} declared twice", lineno, tok)
            return False
        self.names.append(name)
        self.by_label[name.lower()] = name
        return True

    def variable(self, reader, lineno, tok) -> Optional[str]:
        if tok.text in self.names:
            return tok.text
        reader.error(f"unknown variable {tok.text!r}", lineno, tok)
        return None

    def literal(self, reader, lineno, tok) -> Optional[Literal]:
        text = tok.text
        positive = not text.startswith("!")
        base = text.lstrip("!")
        if text.count("!") > 1 or not base:
            reader.error(f"malformed literal {text!r}", lineno, tok)
            return None
        name = self.by_label.get(base)
        if name is None or base != name.lower():
            reader.error(f"unknown literal {text!r}", lineno, tok)
            return None
        return Literal(name, positive)


# -- networks ---------------------------------------------------------------


def _parse_network(text: str, filename: str, fuzzy: bool):
    reader = _Reader(text, filename)
    scope = _Scope()
    name = None
    parents: dict[str, tuple[str, ...]] = {}
    cells: dict[str, list] = {}
    cell_keys: dict[tuple, SourceSpan] = {}
    spans: dict = {}
    started: set[str] = set()
    allowed = ("pi", "n", "mu") if fuzzy else ("pi", "n")

    for lineno, toks, raw in reader.lines:
        head = toks[0]
        rest = toks[1:]
        if head.text == "network":
            if name is not None:
                reader.error("network name given twice", lineno, head)
            elif len(rest) != 1:
                reader.error("expected: network NAME", lineno, head, raw)
            else:
                name = rest[0].text
                spans["network"] = reader.span(lineno, rest[0])
        elif head.text == "var":
            if len(rest) != 1:
                reader.error("expected: var NAME", lineno, head, raw)
            elif scope.declare(reader, lineno, rest[0]):
                spans[("var", rest[0].text)] = reader.span(lineno, rest[0])
                cells[rest[0].text] = []
        elif head.text == "parents":
            if len(rest) < 2 or rest[1].text != ":":
                reader.error("expected: parents NODE: PARENT ...", lineno, head, raw)
                continue
            node = scope.variable(reader, lineno, rest[0])
            if node is None:
                continue
            if node in parents:
                reader.error(f"parents of {node} given twice", lineno, rest[0])
                continue
            if node in started:
                reader.error(f"parents of {node} must precede its cells", lineno, rest[0])
                continue
            plist = [scope.variable(reader, lineno, t) for t in rest[2:]]
            if None in plist:
                continue
            if len(set(plist)) != len(plist):
                reader.error(f"repeated parent for {node}", lineno, rest[0])
                continue
            parents[node] = tuple(plist)
            spans[("parents", node)] = reader.span(lineno, rest[0])
        elif head.text == "cell":
            _parse_cell(reader, scope, lineno, toks, raw, parents, cells, cell_keys, spans,
                        started, allowed, fuzzy)
        else:
            reader.error(f"unknown directive {head.text!r}", lineno, head)

    if name is None and not reader.diagnostics:
        reader.error("missing 'network NAME' header", reader.lines[0][0] if reader.lines else 1,
                     None, "x")
    reader.finish()
    node_cls, net_cls = (FuzzyNode, FuzzyNetwork) if fuzzy else (NetworkNode, PossibilisticNetwork)
    nodes = tuple(node_cls(v, parents.get(v, ()), tuple(cells[v])) for v in scope.names)
    return Document(net_cls(nodes, name), spans)


def _parse_cell(reader, scope, lineno, toks, raw, parents, cells, cell_keys, spans, started,
                allowed, fuzzy):
    positional, kv = _split_fields(toks[1:])
    if len(positional) < 3 or positional[1].text != ":":
        reader.error("expected: cell NODE: LITERAL [| PARENTS] pi=NUM n=NUM", lineno, toks[0], raw)
        return
    node = scope.variable(reader, lineno, positional[0])
    if node is None:
        return
    started.add(node)
    child = scope.literal(reader, lineno, positional[2])
    if child is None:
        return
    if child.variable != node:
        reader.error(f"cell of {node} must be about {node.lower()} or !{node.lower()}",
                     lineno, positional[2])
        return
    plist = parents.get(node, ())
    cond = positional[3:]
    inst: Union[str, tuple]
    if not cond:
        if plist:
            reader.error(f"cell of {node} needs '| ...' over parents {' '.join(plist)}",
                         lineno, positional[2])
            return
        inst = ()
    else:
        if cond[0].text != "|" or len(cond) < 2:
            reader.error("expected '|' followed by parent literals or 'else'", lineno, cond[0])
            return
        cond = cond[1:]
        if len(cond) == 1 and cond[0].text == ELSE:
            inst = ELSE
        else:
            assigned: dict[str, bool] = {}
            for t in cond:
                lit = scope.literal(reader, lineno, t)
                if lit is None:
                    return
                if lit.variable not in plist:
                    reader.error(f"{lit.variable} is not a parent of {node}", lineno, t)
                    return
                if lit.variable in assigned:
                    reader.error(f"parent {lit.variable} assigned twice", lineno, t)
                    return
                assigned[lit.variable] = lit.positive
            missing = [p for p in plist if p not in assigned]
            if missing:
                reader.error(f"instantiation misses parent(s) {' '.join(missing)}", lineno, cond[-1])
                return
            inst = tuple(assigned[p] for p in plist)

    values = _key_values(reader, lineno, kv, allowed)
    ok = True
    for key in ("pi", "n"):
        if key not in values:
            reader.error(f"missing {key}=", lineno, toks[0], raw)
            ok = False
    if not ok:
        return
    pi = _number(reader, lineno, *values["pi"], "pi")
    n_text, n_tok = values["n"]
    if "/" in n_text:
        if not fuzzy:
            reader.error("triangular necessity in a crisp network (use a .pfnet file)",
                         lineno, n_tok)
            return
        parts = n_text.split("/")
        if len(parts) != 3:
            reader.error(f"expected lower/peak/upper, got {n_text!r}", lineno, n_tok)
            return
        nums = [_number(reader, lineno, p, n_tok, "n") for p in parts]
        if None in nums or pi is None:
            return
        try:
            n = TriangularDegree(*nums)
        except ValueError as exc:
            reader.error(str(exc), lineno, n_tok)
            return
    else:
        n = _number(reader, lineno, n_text, n_tok, "n")
        if n is None or pi is None:
            return
        if fuzzy:
            n = TriangularDegree.crisp(n)

    key = (node, child.positive, inst)
    if key in cell_keys:
        reader.error(f"duplicate cell (first defined at {cell_keys[key]})", lineno, positional[2])
        return
    span = reader.span(lineno, positional[2])
    cell_keys[key] = span
    spans[("cell",) + key] = span
    if fuzzy:
        label = values["mu"][0] if "mu" in values else None
        cells[node].append(FuzzyCell(child.positive, inst, pi, n, label))
    else:
        cells[node].append(ConditionalCell(child.positive, inst, pi, n))


def parse_network(text: str, filename: str = "<network>") -> Document:
    return _parse_network(text, filename, fuzzy=False)


def parse_fuzzy_network(text: str, filename: str = "<fuzzy network>") -> Document:
    return _parse_network(text, filename, fuzzy=True)


# -- knowledge bases --------------------------------------------------------


def parse_kb(text: str, filename: str = "<kb>") -> Document:
    reader = _Reader(text, filename)
    name = None
    blocks: list[dict] = []
    spans: dict = {}
    declared: dict[str, str] = {}

    for lineno, toks, raw in reader.lines:
        head, rest = toks[0], toks[1:]
        if head.text == "network":
            if name is not None or blocks:
                reader.error("'network NAME' must come once, before any kb", lineno, head)
            elif len(rest) != 1:
                reader.error("expected: network NAME", lineno, head, raw)
            else:
                name = rest[0].text
        elif head.text == "kb":
            texts = [t.text for t in rest]
            if len(rest) < 3 or texts[1] != "for" or (len(rest) > 3 and texts[3] != "given") \
                    or len(rest) == 4:
                reader.error("expected: kb NAME for NODE [given PARENT ...]", lineno, head, raw)
                blocks.append(None)
                continue
            node_tok = rest[2]
            try:
                Variable(node_tok.text)
            except LogicError as exc:
                reader.error(str(exc), lineno, node_tok)
                blocks.append(None)
                continue
            if node_tok.text.lower() in declared:
                reader.error(f"second knowledge base for {node_tok.text}", lineno, node_tok)
                blocks.append(None)
                continue
            declared[node_tok.text.lower()] = node_tok.text
            given = rest[4:]
            blocks.append({"name": rest[0].text, "node": node_tok.text, "line": lineno,
                           "given": given, "clauses": [], "keys": {}})
            spans[("kb", node_tok.text)] = reader.span(lineno, node_tok)
        elif head.text == "clause":
            if not blocks:
                reader.error("clause outside a kb block", lineno, head)
                continue
            if blocks[-1] is not None:
                blocks[-1]["clauses"].append((lineno, toks, raw))
        else:
            reader.error(f"unknown directive {head.text!r}", lineno, head)

    bases = []
    for block in blocks:
        if block is None:
            continue
        node = block["node"]
        plist = []
        for t in block["given"]:
            p = declared.get(t.text.lower())
            if p is None or p != t.text:
                reader.error(f"unknown parent {t.text!r} (every parent needs its own kb)",
                             block["line"], t)
            elif p == node or p in plist:
                reader.error(f"invalid parent {t.text!r} for {node}", block["line"], t)
            else:
                plist.append(p)
        scope = _Scope()
        scope.names = [node] + plist
        scope.by_label = {n.lower(): n for n in scope.names}
        formulas = []
        for lineno, toks, raw in block["clauses"]:
            f = _parse_clause(reader, scope, lineno, toks, raw, node)
            if f is None:
                continue
            if f.clause in block["keys"]:
                reader.error(f"duplicate clause (first at line {block['keys'][f.clause]})",
                             lineno, toks[1])
                continue
            block["keys"][f.clause] = lineno
            spans[("clause", node, f.clause)] = reader.span(lineno, toks[1])
            formulas.append(f)
        bases.append(LocalKB(node, tuple(plist), AverageKB((node,) + tuple(plist),
                                                           tuple(formulas)), block["name"]))
    if not blocks and not reader.diagnostics:
        reader.error("no kb blocks", 1, None, "x")
    reader.finish()
    return Document(LocalKBSet(tuple(bases), name or "network"), spans)


def _parse_clause(reader, scope, lineno, toks, raw, node) -> Optional[WeightedFormula]:
    positional, kv = _split_fields(toks[1:])
    if not positional:
        reader.error("expected: clause LIT [| LIT ...] alpha=NUM beta=NUM", lineno, toks[0], raw)
        return None
    lits = []
    for i, t in enumerate(positional):
        if i % 2 == 1:
            if t.text != "|":
                reader.error("expected '|' between literals", lineno, t)
                return None
            continue
        lit = scope.literal(reader, lineno, t)
        if lit is None:
            return None
        lits.append(lit)
    if positional[-1].text == "|":
        reader.error("dangling '|'", lineno, positional[-1])
        return None
    try:
        clause = Clause(lits)
    except TautologyError as exc:
        reader.error(f"tautological clause: {exc}", lineno, positional[0])
        return None
    if node not in clause.variables():
        reader.error(f"clause must mention {node.lower()}", lineno, positional[0])
        return None
    values = _key_values(reader, lineno, kv, ("alpha", "beta"))
    if "alpha" not in values or "beta" not in values:
        reader.error("clause needs alpha= and beta=", lineno, toks[0], raw)
        return None
    alpha = _number(reader, lineno, *values["alpha"], "alpha")
    beta = _number(reader, lineno, *values["beta"], "beta")
    if alpha is None or beta is None:
        return None
    if alpha == 0.0:
        reader.error("alpha must be positive", lineno, values["alpha"][1])
        return None
    return WeightedFormula(clause, alpha, beta)


# -- rendering --------------------------------------------------------------


def format_number(x: float) -> str:
    """Shortest text that parses back to the same float."""
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return "0" if s == "-0" else s


def format_degree(x: float) -> str:
    """At most 6 significant digits, no exponent, trailing zeros trimmed."""
    s = f"{float(f'{x:.6g}'):.12f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _cell_line(node, cell, n_text: str, extra: str = "") -> str:
    lit = ("" if cell.value else "!") + node.variable.lower()
    if node.parents:
        if cell.parents == ELSE:
            cond = " | else"
        else:
            cond = " | " + " ".join(("" if v else "!") + p.lower()
                                    for p, v in zip(node.parents, cell.parents))
    else:
        cond = ""
    return f"cell {node.variable}: {lit}{cond} pi={format_number(cell.pi)} n={n_text}{extra}"


def _render_net(net, n_format: Callable) -> str:
    out = [f"network {net.name}"]
    out += [f"var {node.variable}" for node in net.nodes]
    out += [f"parents {node.variable}: {' '.join(node.parents)}"
            for node in net.nodes if node.parents]
    for node in net.nodes:
        for cell in node.cells:
            out.append(n_format(node, cell))
    return "\n".join(out) + "\n"


def render_network(net: PossibilisticNetwork) -> str:
    return _render_net(net, lambda node, c: _cell_line(node, c, format_number(c.n)))


def render_fuzzy_network(net: FuzzyNetwork) -> str:
    def line(node, c):
        tri = "/".join(format_number(v) for v in (c.n.lower, c.n.peak, c.n.upper))
        return _cell_line(node, c, tri, f" mu={c.label}" if c.label else "")
    return _render_net(net, line)


def render_kb(kbs: LocalKBSet) -> str:
    out = [f"network {kbs.name}"]
    for base in kbs.bases:
        header = f"kb {base.name or 'S' + base.variable} for {base.variable}"
        if base.parents:
            header += " given " + " ".join(base.parents)
        out.append(header)
        order = (base.variable,) + base.parents
        for f in base.kb.formulas:
            lits = " | ".join(lit.label for lit in f.clause.ordered(order))
            out.append(f"clause {lits} alpha={format_number(f.alpha)} beta={format_number(f.beta)}")
    return "\n".join(out) + "\n"


def render_document(doc: Document) -> str:
    value = doc.value
    if isinstance(value, FuzzyNetwork):
        return render_fuzzy_network(value)
    if isinstance(value, PossibilisticNetwork):
        return render_network(value)
    return render_kb(value)


def _table_rows(table: JointTable):
    for world, degrees in table.rows():
        yield [lit.label for lit in world.literals()] + [format_degree(d) for d in degrees]


def render_joint(net_or_table: Union[PossibilisticNetwork, JointTable], format: str = "table") -> str:
    """The joint table, one row per world in canonical order."""
    table = net_or_table if isinstance(net_or_table, JointTable) else joint_table(net_or_table)
    header = list(table.names) + ["minPi", "minN", "avg"]
    rows = list(_table_rows(table))
    return _layout(header, rows, format)


def render_fuzzy_joint(net: FuzzyNetwork, format: str = "table") -> str:
    from .fuzzy import fuzzy_joint
    from .logic import enumerate_worlds

    header = list(net.variables) + ["minPi", "minN"]
    rows = []
    for w in enumerate_worlds(net.variables):
        pi = min(node.cell_for(w).pi for node in net.nodes)
        tri = fuzzy_joint(net, w)
        rows.append([lit.label for lit in w.literals()] + [
            format_degree(pi), "/".join(format_degree(v) for v in (tri.lower, tri.peak, tri.upper))])
    return _layout(header, rows, format)


def _layout(header, rows, format):
    if format == "csv":
        return "".join(",".join(r) + "\n" for r in [header] + rows)
    if format != "table":
        raise ValueError(f"unknown format {format!r}; expected 'table' or 'csv'")
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n"
                   for r in [header] + rows)


_PARSERS = {".pnet": parse_network, ".pfnet": parse_fuzzy_network, ".pkb": parse_kb}


def load_document(path, kind: Optional[str] = None) -> Document:
    """Read and parse a file, choosing the grammar from ``kind`` or the extension."""
    from pathlib import Path

    path = Path(path)
    suffix = kind or path.suffix
    parser = _PARSERS.get(suffix)
    if parser is None:
        raise ValueError(f"{path}: unknown file type {suffix!r}; expected .pnet, .pfnet or .pkb")
    return parser(path.read_text(encoding="utf-8"), str(path))
