"""Parser for the ``:strips`` + ``:typing`` fragment of PDDL.

Anything outside that fragment (negative preconditions, quantifiers,
conditional effects, numeric fluents, ...) is rejected with
:class:`UnsupportedFeature` rather than silently ignored.
"""
from __future__ import annotations

from .errors import ArityMismatch, PddlSyntaxError, UndeclaredSymbol, UnsupportedFeature
from .sexpr import SList, Word, read
from .syntax import ROOT_TYPE, Atom, DomainDef, OperatorSchema, Predicate, ProblemDef

SUPPORTED_REQUIREMENTS = frozenset({":strips", ":typing", ":equality"})

UNSUPPORTED_FORMULAS = frozenset({
    "not", "or", "imply", "forall", "exists", "when", "=",
    "increase", "decrease", "assign", "scale-up", "scale-down",
})

UNSUPPORTED_SECTIONS = frozenset({
    ":functions", ":derived", ":durative-action", ":axiom", ":constraints", ":metric",
})


class _Reader:
    def __init__(self, filename: str | None):
        self.filename = filename

    def pos(self, item):
        return getattr(item, "line", None), getattr(item, "column", None)

    def syntax(self, msg, item):
        return PddlSyntaxError(msg, *self.pos(item), self.filename)

    def unsupported(self, msg, item):
        return UnsupportedFeature(msg, *self.pos(item), self.filename)

    def undeclared(self, msg, item):
        return UndeclaredSymbol(msg, *self.pos(item), self.filename)

    def arity(self, msg, item):
        return ArityMismatch(msg, *self.pos(item), self.filename)

    def word(self, item, what: str) -> Word:
        if not isinstance(item, str):
            raise self.syntax(f"{what} must be a symbol", item)
        return item

    def block(self, item, what: str) -> SList:
        if not isinstance(item, list):
            raise self.syntax(f"{what} must be a parenthesised list", item)
        return item

    def header(self, expr, keyword: str):
        """Check ``(define (<keyword> NAME) ...)`` and return (name, sections)."""
        if not expr or expr[0] != "define":
            raise self.syntax("expected (define ...)", expr)
        if len(expr) < 2:
            raise self.syntax(f"missing ({keyword} NAME)", expr)
        head = self.block(expr[1], f"({keyword} NAME)")
        if len(head) != 2 or head[0] != keyword:
            raise self.syntax(f"expected ({keyword} NAME)", head)
        name = self.word(head[1], f"{keyword} name")
        sections = []
        for sec in expr[2:]:
            sec = self.block(sec, "section")
            if not sec or not isinstance(sec[0], str) or not sec[0].startswith(":"):
                raise self.syntax("section must start with a keyword", sec)
            sections.append(sec)
        return str(name), sections

    def typed_list(self, items, what: str, variables: bool) -> list[tuple[Word, str]]:
        out = []
        pending: list[Word] = []
        i = 0
        while i < len(items):
            tok = self.word(items[i], what)
            if tok == "-":
                if i + 1 >= len(items):
                    raise self.syntax("'-' must be followed by a type", tok)
                typ = items[i + 1]
                if isinstance(typ, list):
                    if typ and typ[0] == "either":
                        raise self.unsupported("'either' types are not supported", typ)
                    raise self.syntax("malformed type", typ)
                if not pending:
                    raise self.syntax("type without preceding names", tok)
                out.extend((p, str(typ)) for p in pending)
                pending = []
                i += 2
                continue
            if variables and not tok.startswith("?"):
                raise self.syntax(f"expected a variable, got {tok!r}", tok)
            if not variables and tok.startswith("?"):
                raise self.syntax(f"unexpected variable {tok!r}", tok)
            pending.append(tok)
            i += 1
        out.extend((p, ROOT_TYPE) for p in pending)
        return out

    def requirements(self, sec) -> tuple[str, ...]:
        reqs = []
        for r in sec[1:]:
            r = self.word(r, "requirement")
            if r not in SUPPORTED_REQUIREMENTS:
                raise self.unsupported(f"requirement {r} is not supported", r)
            reqs.append(str(r))
        return tuple(reqs)

    def conjunction(self, expr, what: str, allow_negation: bool):
        """Flatten ``(and ...)`` into (positive atoms, negated atoms)."""
        pos, neg = [], []
        expr = self.block(expr, what)
        if not expr:
            return pos, neg
        head = expr[0]
        if head == "and":
            for sub in expr[1:]:
                p, n = self.conjunction(sub, what, allow_negation)
                pos.extend(p)
                neg.extend(n)
            return pos, neg
        if head == "not" and allow_negation:
            if len(expr) != 2:
                raise self.syntax("(not ...) takes one argument", expr)
            inner = self.block(expr[1], "negated atom")
            if inner and inner[0] in UNSUPPORTED_FORMULAS:
                raise self.unsupported(f"'{inner[0]}' inside a delete effect is not supported", inner)
            neg.append(inner)
            return pos, neg
        if head in UNSUPPORTED_FORMULAS:
            raise self.unsupported(f"'{head}' in {what} is not supported", expr)
        if isinstance(head, list):
            raise self.syntax(f"malformed {what}", expr)
        pos.append(expr)
        return pos, neg


def _dedupe(atoms):
    return tuple(dict.fromkeys(atoms))


def parse_domain(text: str, filename: str | None = None) -> DomainDef:
    r = _Reader(filename)
    expr = read(text, filename)
    name, sections = r.header(expr, "domain")

    requirements: tuple[str, ...] = ()
    types: list[tuple[str, str]] = []
    constants: list[tuple[str, str]] = []
    predicates: dict[str, Predicate] = {}
    raw_actions = []
    for sec in sections:
        key = sec[0]
        if key == ":requirements":
            requirements = r.requirements(sec)
        elif key == ":types":
            types = [(str(t), p) for t, p in r.typed_list(sec[1:], "type", variables=False)]
        elif key == ":constants":
            constants = [(str(c), t) for c, t in r.typed_list(sec[1:], "constant", variables=False)]
        elif key == ":predicates":
            for p in sec[1:]:
                p = r.block(p, "predicate declaration")
                if not p:
                    raise r.syntax("empty predicate declaration", p)
                pname = r.word(p[0], "predicate name")
                params = r.typed_list(p[1:], "predicate parameter", variables=True)
                predicates[str(pname)] = Predicate(str(pname), tuple((str(v), t) for v, t in params))
        elif key == ":action":
            raw_actions.append(sec)
        elif key in UNSUPPORTED_SECTIONS:
            raise r.unsupported(f"section {key} is not supported", sec)
        else:
            raise r.syntax(f"unknown domain section {key}", sec)

    declared_types = {ROOT_TYPE} | {t for t, _ in types} | {p for _, p in types}
    for _, t in constants:
        if t not in declared_types:
            raise r.undeclared(f"undeclared type {t!r}", t)
    for p in predicates.values():
        for _, t in p.params:
            if t not in declared_types:
                raise r.undeclared(f"undeclared type {t!r} in predicate {p.name}", t)

    const_names = {c for c, _ in constants}
    operators = tuple(
        _parse_action(r, sec, predicates, declared_types, const_names) for sec in raw_actions)
    names = [op.name for op in operators]
    if len(set(names)) != len(names):
        raise r.syntax("duplicate action name", raw_actions[0])
    return DomainDef(name=name, requirements=requirements, types=tuple(types),
                     constants=tuple(constants), predicates=tuple(predicates.values()),
                     operators=operators)


def _parse_action(r: _Reader, sec, predicates, declared_types, const_names) -> OperatorSchema:
    if len(sec) < 2:
        raise r.syntax("action without a name", sec)
    name = r.word(sec[1], "action name")
    fields = {}
    rest = sec[2:]
    if len(rest) % 2:
        raise r.syntax(f"action {name}: keyword without value", sec)
    for key, value in zip(rest[::2], rest[1::2]):
        key = r.word(key, "action keyword")
        if key not in (":parameters", ":precondition", ":effect"):
            raise r.syntax(f"unknown action keyword {key}", key)
        fields[str(key)] = value

    params = r.typed_list(r.block(fields.get(":parameters", SList()), "parameter list"),
                          "parameter", variables=True)
    seen = set()
    for v, t in params:
        if v in seen:
            raise r.syntax(f"duplicate parameter {v} in action {name}", v)
        seen.add(v)
        if t not in declared_types:
            raise r.undeclared(f"undeclared type {t!r}", v)

    def atom(expr) -> Atom:
        pname = r.word(expr[0], "predicate name")
        pred = predicates.get(pname)
        if pred is None:
            raise r.undeclared(f"undeclared predicate {pname!r}", pname)
        args = []
        for a in expr[1:]:
            a = r.word(a, "argument")
            if a.startswith("?"):
                if a not in seen:
                    raise r.undeclared(f"variable {a} is not a parameter of {name}", a)
            elif a not in const_names:
                raise r.undeclared(f"undeclared constant {a!r}", a)
            args.append(str(a))
        if len(args) != pred.arity:
            raise r.arity(f"{pname} expects {pred.arity} arguments, got {len(args)}", expr)
        return Atom(str(pname), tuple(args))

    pre_pos, _ = r.conjunction(fields.get(":precondition", SList()), "precondition",
                               allow_negation=False)
    add, dels = r.conjunction(fields.get(":effect", SList()), "effect", allow_negation=True)
    return OperatorSchema(
        name=str(name),
        params=tuple((str(v), t) for v, t in params),
        precond=_dedupe(atom(a) for a in pre_pos),
        add=_dedupe(atom(a) for a in add),
        delete=_dedupe(atom(a) for a in dels),
    )


def parse_problem(text: str, dom: DomainDef, filename: str | None = None) -> ProblemDef:
    r = _Reader(filename)
    expr = read(text, filename)
    name, sections = r.header(expr, "problem")
    domain_name = None
    objects: list[tuple[str, str]] = []
    init_raw, goal_raw = [], None
    for sec in sections:
        key = sec[0]
        if key == ":domain":
            if len(sec) != 2:
                raise r.syntax("expected (:domain NAME)", sec)
            domain_name = r.word(sec[1], "domain name")
            if domain_name != dom.name:
                raise r.undeclared(f"problem refers to domain {domain_name!r}, "
                                   f"loaded domain is {dom.name!r}", domain_name)
        elif key == ":requirements":
            r.requirements(sec)
        elif key == ":objects":
            objects = [(str(o), t) for o, t in r.typed_list(sec[1:], "object", variables=False)]
        elif key == ":init":
            init_raw = sec[1:]
        elif key == ":goal":
            if len(sec) != 2:
                raise r.syntax("expected (:goal FORMULA)", sec)
            goal_raw = sec[1]
        elif key in UNSUPPORTED_SECTIONS:
            raise r.unsupported(f"section {key} is not supported", sec)
        else:
            raise r.syntax(f"unknown problem section {key}", sec)

    declared_types = {ROOT_TYPE} | {t for t, _ in dom.types} | {p for _, p in dom.types}
    for o, t in objects:
        if t not in declared_types:
            raise r.undeclared(f"undeclared type {t!r} for object {o}", o)
    known = {c for c, _ in dom.constants} | {o for o, _ in objects}

    def atom(expr) -> Atom:
        expr = r.block(expr, "atom")
        if not expr:
            raise r.syntax("empty atom", expr)
        if expr[0] in UNSUPPORTED_FORMULAS:
            raise r.unsupported(f"'{expr[0]}' is not supported here", expr)
        pname = r.word(expr[0], "predicate name")
        pred = dom.predicate(pname)
        if pred is None:
            raise r.undeclared(f"undeclared predicate {pname!r}", pname)
        args = []
        for a in expr[1:]:
            a = r.word(a, "object")
            if a not in known:
                raise r.undeclared(f"undeclared object {a!r}", a)
            args.append(str(a))
        if len(args) != pred.arity:
            raise r.arity(f"{pname} expects {pred.arity} arguments, got {len(args)}", expr)
        return Atom(str(pname), tuple(args))

    init = _dedupe(atom(a) for a in init_raw)
    goal: tuple[Atom, ...] = ()
    if goal_raw is not None:
        pos, _ = r.conjunction(goal_raw, "goal", allow_negation=False)
        goal = _dedupe(atom(a) for a in pos)
    return ProblemDef(name=name, domain_name=str(domain_name or dom.name),
                      objects=tuple(objects), init=init, goal=goal)


def parse_domain_file(path) -> DomainDef:
    with open(path) as fh:
        return parse_domain(fh.read(), str(path))


def parse_problem_file(path, dom: DomainDef) -> ProblemDef:
    with open(path) as fh:
        return parse_problem(fh.read(), dom, str(path))
