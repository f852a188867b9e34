"""First-order formulas over the lattice signature: parser, prenex
classifier, and bounded evaluation.

The language has variables, named partition constants declared in a
prelude (`const c11 = [1]+[1];`), the atoms `<=`, `=`, `!=`, the
connectives `! & | -> <->` (precedence in that order, `->` right
associative) and the quantifiers `forall v (...)`, `exists v (...)`.
`#` starts a line comment; one formula per file.

Evaluation is truncated Tarski semantics: quantifiers range over every
partition of cardinality at most maxCard + slack.  Free variables are
whatever the caller assigns; definedSet sweeps them up to maxCard only.
Quantifier bodies that are themselves quantifier-free are evaluated in
bulk as bitmasks over the universe's deterministic ordinals, which is
what makes exhaustive pair sweeps affordable.
"""

import importlib.resources
import re

from .partitions import leq, parse_partition, render


class ParseError(Exception):
    """Syntax error with position information."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = 'line %d, col %d: %s' % (line, col, message)
        super().__init__(message)
        self.line = line
        self.col = col


class EvalError(Exception):
    """Unassigned free variable, arity mismatch, or insufficient universe."""


# ---------------------------------------------------------------------------
# AST

class Node:
    """Base class; children in _fields, structural equality throughout."""

    _fields = ()

    def key(self):
        return (type(self).__name__,) + tuple(
            getattr(self, f).key() if isinstance(getattr(self, f), Node)
            else getattr(self, f)
            for f in self._fields)

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__,
                           ', '.join(repr(getattr(self, f)) for f in self._fields))


class Var(Node):
    _fields = ('name',)

    def __init__(self, name):
        self.name = name


class Const(Node):
    """A named constant carrying its canonical partition value."""

    _fields = ('name', 'value')

    def __init__(self, name, value):
        self.name = name
        self.value = value

    def key(self):
        return ('Const', self.name, self.value)


class Leq(Node):
    _fields = ('left', 'right')

    def __init__(self, left, right):
        self.left = left
        self.right = right


class Eq(Node):
    _fields = ('left', 'right')

    def __init__(self, left, right):
        self.left = left
        self.right = right


class Not(Node):
    _fields = ('body',)

    def __init__(self, body):
        self.body = body


class _Binary(Node):
    _fields = ('left', 'right')

    def __init__(self, left, right):
        self.left = left
        self.right = right


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


class Exists(Node):
    _fields = ('var', 'body')

    def __init__(self, var, body):
        self.var = var
        self.body = body


class Forall(Node):
    _fields = ('var', 'body')

    def __init__(self, var, body):
        self.var = var
        self.body = body


def free_vars(f):
    """The free variable names of a formula."""
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, (Leq, Eq)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, _Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError('not a formula node: %r' % (f,))


def constants_of(f):
    """All Const nodes of a formula, keyed by name."""
    out = {}

    def walk(node):
        if isinstance(node, Const):
            out[node.name] = node.value
        elif isinstance(node, (Leq, Eq, _Binary)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, (Exists, Forall)):
            walk(node.body)
    walk(f)
    return out


def _has_quantifier(f):
    if isinstance(f, (Exists, Forall)):
        return True
    if isinstance(f, Not):
        return _has_quantifier(f.body)
    if isinstance(f, (_Binary, Leq, Eq)):
        if isinstance(f, (Leq, Eq)):
            return False
        return _has_quantifier(f.left) or _has_quantifier(f.right)
    return False


# ---------------------------------------------------------------------------
# lexer / parser

_TOKEN_RE = re.compile(r'''
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op><->|->|<=|!=|=|!|&|\||\(|\)|;)
''', re.VERBOSE)


def _strip_comments(text):
    """Replace # comments with spaces so offsets stay true to the file."""
    out = []
    for line in text.split('\n'):
        cut = line.find('#')
        if cut >= 0:
            line = line[:cut] + ' ' * (len(line) - cut)
        out.append(line)
    return '\n'.join(out)


def _line_col(text, pos):
    line = text.count('\n', 0, pos) + 1
    col = pos - (text.rfind('\n', 0, pos) + 1) + 1
    return line, col


_PRELUDE_RE = re.compile(r'\s*const\s+([A-Za-z_]\w*)\s*=\s*([^;]*);')


class _Parser:

    def __init__(self, text, constants, start=0):
        self.text = text
        self.constants = constants
        self.tokens = []
        pos = start
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match:
                line, col = _line_col(text, pos)
                raise ParseError('unexpected character %r' % text[pos], line, col)
            if match.lastgroup != 'ws':
                self.tokens.append((match.lastgroup, match.group(match.lastgroup), pos))
            pos = match.end()
        self.at = 0

    def peek(self):
        if self.at < len(self.tokens):
            return self.tokens[self.at]
        return (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.at += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value:
            self.fail('expected %r, found %r' % (value, val if val else 'end of input'), pos)
        return val

    def fail(self, message, pos):
        line, col = _line_col(self.text, pos)
        raise ParseError(message, line, col)

    # precedence climbing, loosest first
    def formula(self):
        return self.iff()

    def iff(self):
        left = self.implies()
        while self.peek()[1] == '<->':
            self.next()
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.disjunction()
        if self.peek()[1] == '->':
            self.next()
            return Implies(left, self.implies())   # right associative
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek()[1] == '|':
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.negation()
        while self.peek()[1] == '&':
            self.next()
            left = And(left, self.negation())
        return left

    def negation(self):
        if self.peek()[1] == '!':
            self.next()
            return Not(self.negation())
        return self.primary()

    def primary(self):
        kind, val, pos = self.peek()
        if val == '(':
            self.next()
            inner = self.formula()
            self.expect(')')
            return inner
        if val in ('forall', 'exists'):
            self.next()
            name_kind, name, name_pos = self.next()
            if name_kind != 'name' or name in ('forall', 'exists'):
                self.fail('expected a variable name after %r' % val, name_pos)
            if name in self.constants:
                self.fail('%r is a declared constant, not a variable' % name, name_pos)
            self.expect('(')
            body = self.formula()
            self.expect(')')
            return (Forall if val == 'forall' else Exists)(name, body)
        return self.atom()

    def atom(self):
        left = self.term()
        kind, val, pos = self.next()
        if val == '<=':
            return Leq(left, self.term())
        if val == '=':
            return Eq(left, self.term())
        if val == '!=':
            return Not(Eq(left, self.term()))
        self.fail('expected <=, = or != after a term', pos)

    def term(self):
        kind, val, pos = self.next()
        if kind != 'name' or val in ('forall', 'exists', 'const'):
            self.fail('expected a variable or constant name, found %r'
                      % (val if val else 'end of input'), pos)
        if val in self.constants:
            return Const(val, self.constants[val])
        return Var(val)


def parse(text, constants=None):
    """Parse a formula file: optional const prelude, then one formula."""
    stripped = _strip_comments(text)
    table = dict(constants) if constants else {}
    pos = 0
    while True:
        match = _PRELUDE_RE.match(stripped, pos)
        if not match:
            break
        name, literal = match.group(1), match.group(2)
        try:
            table[name] = parse_partition(literal)
        except ValueError as exc:
            line, col = _line_col(stripped, match.start(2))
            raise ParseError('bad partition literal: %s' % exc, line, col)
        pos = match.end()
    parser = _Parser(stripped, table, start=pos)
    if not parser.tokens:
        raise ParseError('no formula found')
    formula = parser.formula()
    kind, val, at = parser.peek()
    if kind is not None:
        parser.fail('unexpected trailing %r' % val, at)
    return formula


def print_formula(f):
    """Render a formula; parse(print_formula(f)) rebuilds an equal tree
    when its constants are redeclared (see print_file)."""
    return _print(f, 0)


_LEVEL = {'Iff': 1, 'Implies': 2, 'Or': 3, 'And': 4}


def _print(f, need):
    if isinstance(f, Var) or isinstance(f, Const):
        return f.name
    if isinstance(f, Leq):
        return '%s <= %s' % (_print(f.left, 9), _print(f.right, 9))
    if isinstance(f, Eq):
        return '%s = %s' % (_print(f.left, 9), _print(f.right, 9))
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return '%s != %s' % (_print(f.body.left, 9), _print(f.body.right, 9))
        if isinstance(f.body, (Var, Const, Not)):
            return '!%s' % _print(f.body, 9)
        return '!(%s)' % _print(f.body, 0)
    if isinstance(f, (Exists, Forall)):
        word = 'forall' if isinstance(f, Forall) else 'exists'
        return '%s %s (%s)' % (word, f.var, _print(f.body, 0))
    ops = {'Iff': '<->', 'Implies': '->', 'Or': '|', 'And': '&'}
    name = type(f).__name__
    level = _LEVEL[name]
    if name == 'Implies':
        text = '%s %s %s' % (_print(f.left, level + 1), ops[name], _print(f.right, level))
    else:
        text = '%s %s %s' % (_print(f.left, level), ops[name], _print(f.right, level + 1))
    if level < need:
        return '(%s)' % text
    return text


def print_file(f):
    """Render a formula with the const prelude needed to reparse it."""
    lines = ['const %s = %s;' % (name, render(value))
             for name, value in sorted(constants_of(f).items())]
    lines.append(print_formula(f))
    return '\n'.join(lines)


# ---------------------------------------------------------------------------
# prenex classification

def _expand(f):
    """Rewrite -> and <-> so negation can be pushed to the atoms."""
    if isinstance(f, (Var, Const, Leq, Eq)):
        return f
    if isinstance(f, Not):
        return Not(_expand(f.body))
    if isinstance(f, And):
        return And(_expand(f.left), _expand(f.right))
    if isinstance(f, Or):
        return Or(_expand(f.left), _expand(f.right))
    if isinstance(f, Implies):
        return Or(Not(_expand(f.left)), _expand(f.right))
    if isinstance(f, Iff):
        left, right = _expand(f.left), _expand(f.right)
        return And(Or(Not(left), right), Or(Not(right), left))
    if isinstance(f, Exists):
        return Exists(f.var, _expand(f.body))
    if isinstance(f, Forall):
        return Forall(f.var, _expand(f.body))
    raise TypeError('not a formula node: %r' % (f,))


def _nnf(f, negate=False):
    """Negation normal form of an expanded formula."""
    if isinstance(f, (Leq, Eq)):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _nnf(f.body, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Exists):
        cls = Forall if negate else Exists
        return cls(f.var, _nnf(f.body, negate))
    if isinstance(f, Forall):
        cls = Exists if negate else Forall
        return cls(f.var, _nnf(f.body, negate))
    raise TypeError('unexpected node in NNF: %r' % (f,))


class PrenexClass:
    """Kind Sigma/Pi/Delta with a level; Delta 0 is the open formulas."""

    def __init__(self, kind, level):
        self.kind = kind
        self.level = level

    def __eq__(self, other):
        return (isinstance(other, PrenexClass)
                and (self.kind, self.level) == (other.kind, other.level))

    def __hash__(self):
        return hash((self.kind, self.level))

    def __repr__(self):
        return 'PrenexClass(%r, %d)' % (self.kind, self.level)

    def __str__(self):
        return '%s%d' % (self.kind, self.level)


def _levels(f):
    """Least (Sigma, Pi) prenex levels of an NNF formula, syntactically.

    A leading existential block costs one Sigma level and embeds in Pi
    one level higher, dually for universal; conjunction and disjunction
    merge like-kind blocks, so they take the componentwise maximum.
    """
    if isinstance(f, (Leq, Eq, Not)):
        return (0, 0)
    if isinstance(f, (And, Or)):
        ls, lp = _levels(f.left)
        rs, rp = _levels(f.right)
        return (max(ls, rs), max(lp, rp))
    if isinstance(f, Exists):
        s, _ = _levels(f.body)
        s = max(s, 1)
        return (s, s + 1)
    if isinstance(f, Forall):
        _, p = _levels(f.body)
        p = max(p, 1)
        return (p + 1, p)
    raise TypeError('unexpected node in classification: %r' % (f,))


def prenex_classify(f):
    """A syntactic upper bound on the prenex class of a formula.

    The formula is rewritten to negation normal form and the least
    Sigma/Pi levels are combined bottom-up; the true semantic class
    (over all logically equivalent forms) can only be lower.
    """
    s, p = _levels(_nnf(_expand(f)))
    if s == p:
        return PrenexClass('Delta', s)
    if s < p:
        return PrenexClass('Sigma', s)
    return PrenexClass('Pi', p)


# ---------------------------------------------------------------------------
# evaluation

class EvalConfig:
    """Quantifier truncation: quantifiers range over cardinality <= maxCard + slack."""

    def __init__(self, max_card, slack=0):
        if max_card < 0 or slack < 0:
            raise ValueError('maxCard and slack must be non-negative')
        self.max_card = max_card
        self.slack = slack

    def __repr__(self):
        return 'EvalConfig(max_card=%d, slack=%d)' % (self.max_card, self.slack)


class _Compiled:
    """A formula compiled against one universe.

    Scalar nodes become closures over an environment dict; a quantifier
    whose body is quantifier-free is instead evaluated in bulk as a
    bitmask over the universe ordinals, one bit per candidate value of
    the bound variable.
    """

    def __init__(self, formula, universe, cutoff):
        self.universe = universe
        self.cutoff = cutoff
        self.full = (1 << cutoff) - 1
        self.down = universe.down_bits()
        self.up = universe.up_bits()
        self.elements = universe.elements[:cutoff]
        self._down_cache = {}
        self._up_cache = {}
        self.run = self._compile(formula)

    # masks for comparisons against a fixed partition
    def _down_mask(self, value):
        """Bits of the sweep candidates that are <= value."""
        if value in self.universe.index:
            return self.down[self.universe.ordinal(value)] & self.full
        if value not in self._down_cache:
            mask = 0
            for i, u in enumerate(self.elements):
                if leq(u, value):
                    mask |= 1 << i
            self._down_cache[value] = mask
        return self._down_cache[value]

    def _up_mask(self, value):
        """Bits of the sweep candidates that are >= value."""
        if value in self.universe.index:
            return self.up[self.universe.ordinal(value)] & self.full
        if value not in self._up_cache:
            mask = 0
            for i, u in enumerate(self.elements):
                if leq(value, u):
                    mask |= 1 << i
            self._up_cache[value] = mask
        return self._up_cache[value]

    def _bit_mask(self, value):
        if value in self.universe.index:
            ordinal = self.universe.ordinal(value)
            if ordinal < self.cutoff:
                return 1 << ordinal
        return 0

    def _term(self, t):
        """A closure env -> Partition for a term."""
        if isinstance(t, Const):
            value = t.value
            return lambda env: value
        name = t.name

        def lookup(env):
            try:
                return env[name]
            except KeyError:
                raise EvalError('unassigned free variable %r' % name)
        return lookup

    def _compile(self, f):
        """Scalar compilation: env -> bool."""
        if isinstance(f, Leq):
            left, right = self._term(f.left), self._term(f.right)
            return lambda env: leq(left(env), right(env))
        if isinstance(f, Eq):
            left, right = self._term(f.left), self._term(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, Not):
            body = self._compile(f.body)
            return lambda env: not body(env)
        if isinstance(f, And):
            left, right = self._compile(f.left), self._compile(f.right)
            return lambda env: left(env) and right(env)
        if isinstance(f, Or):
            left, right = self._compile(f.left), self._compile(f.right)
            return lambda env: left(env) or right(env)
        if isinstance(f, Implies):
            left, right = self._compile(f.left), self._compile(f.right)
            return lambda env: not left(env) or right(env)
        if isinstance(f, Iff):
            left, right = self._compile(f.left), self._compile(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, (Exists, Forall)):
            want_all = isinstance(f, Forall)
            var = f.var
            if not _has_quantifier(f.body):
                mask_fn = self._compile_mask(f.body, var)
                full = self.full
                if want_all:
                    return lambda env: mask_fn(env) == full
                return lambda env: mask_fn(env) != 0
            body = self._compile(f.body)
            elements = self.elements

            def sweep(env):
                env = dict(env)
                for u in elements:
                    env[var] = u
                    if body(env) != want_all:
                        return not want_all
                return want_all
            return sweep
        raise TypeError('not a formula node: %r' % (f,))

    def _compile_mask(self, f, var):
        """Bulk compilation of a quantifier-free body: env -> bitmask of
        the candidates for `var` that satisfy it."""
        full = self.full
        if isinstance(f, Leq):
            return self._atom_mask(f, var, order=True)
        if isinstance(f, Eq):
            return self._atom_mask(f, var, order=False)
        if isinstance(f, Not):
            body = self._compile_mask(f.body, var)
            return lambda env: body(env) ^ full
        if isinstance(f, And):
            left, right = self._compile_mask(f.left, var), self._compile_mask(f.right, var)
            return lambda env: left(env) & right(env)
        if isinstance(f, Or):
            left, right = self._compile_mask(f.left, var), self._compile_mask(f.right, var)
            return lambda env: left(env) | right(env)
        if isinstance(f, Implies):
            left, right = self._compile_mask(f.left, var), self._compile_mask(f.right, var)
            return lambda env: (left(env) ^ full) | right(env)
        if isinstance(f, Iff):
            left, right = self._compile_mask(f.left, var), self._compile_mask(f.right, var)
            return lambda env: (left(env) ^ right(env)) ^ full
        raise TypeError('unexpected node in mask compilation: %r' % (f,))

    def _atom_mask(self, f, var, order):
        left_is = isinstance(f.left, Var) and f.left.name == var
        right_is = isinstance(f.right, Var) and f.right.name == var
        full = self.full
        if left_is and right_is:
            return lambda env: full
        if left_is:
            other = self._term(f.right)
            if order:
                down = self._down_mask
                return lambda env: down(other(env))
            bit = self._bit_mask
            return lambda env: bit(other(env))
        if right_is:
            other = self._term(f.left)
            if order:
                up = self._up_mask
                return lambda env: up(other(env))
            bit = self._bit_mask
            return lambda env: bit(other(env))
        # the bound variable does not occur: broadcast the scalar truth
        scalar = self._compile(f)
        return lambda env: full if scalar(env) else 0


def _check_universe(universe, config):
    need = config.max_card + config.slack
    if universe.max_card < need:
        raise EvalError('universe covers cardinality %d but the evaluation '
                        'needs %d' % (universe.max_card, need))


def compile_formula(f, universe, config):
    """Compile once for repeated evaluation over the same universe."""
    _check_universe(universe, config)
    cutoff = universe.ordinal_cutoff(config.max_card + config.slack)
    return _Compiled(f, universe, cutoff)


def evaluate(f, assignment, universe, config):
    """Truncated Tarski evaluation of f under the given assignment."""
    missing = free_vars(f) - set(assignment)
    if missing:
        raise EvalError('unassigned free variables: %s' % ', '.join(sorted(missing)))
    return compile_formula(f, universe, config).run(dict(assignment))


def defined_set(f, free_var, universe, config):
    """All partitions of cardinality <= maxCard satisfying a one-variable formula."""
    names = free_vars(f)
    if names != {free_var}:
        raise EvalError('expected exactly the free variable %r, formula has %s'
                        % (free_var, sorted(names) or 'none'))
    compiled = compile_formula(f, universe, config)
    run = compiled.run
    out = set()
    for pi in universe.elements[:universe.ordinal_cutoff(config.max_card)]:
        if run({free_var: pi}):
            out.add(pi)
    return out


def defined_relation(f, free_var_names, universe, config):
    """All tuples over cardinality <= maxCard satisfying the formula; the
    sweep order is the universe order on every coordinate."""
    names = free_vars(f)
    if names != set(free_var_names):
        raise EvalError('free variables %s do not match %s'
                        % (sorted(names), list(free_var_names)))
    compiled = compile_formula(f, universe, config)
    run = compiled.run
    candidates = universe.elements[:universe.ordinal_cutoff(config.max_card)]
    out = set()

    def assign(i, env):
        if i == len(free_var_names):
            if run(env):
                out.add(tuple(env[v] for v in free_var_names))
            return
        for pi in candidates:
            env[free_var_names[i]] = pi
            assign(i + 1, env)
    assign(0, {})
    return out


class StabilityReport:
    """Defined sets at each slack in a schedule, with membership flips."""

    def __init__(self, slacks, sizes, flips):
        self.slacks = slacks
        self.sizes = sizes
        self.flips = flips
        self.stable = not flips

    def __repr__(self):
        return ('StabilityReport(slacks=%r, sizes=%r, stable=%r, flips=%d)'
                % (self.slacks, self.sizes, self.stable, len(self.flips)))


def corpus():
    """The bundled formula files as {name: source text}, sorted by name."""
    root = importlib.resources.files('young_defined') / 'corpus'
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith('.fol'):
            out[entry.name[:-len('.fol')]] = entry.read_text(encoding='utf-8')
    return out


def stability_check(f, free_var, universe, config, slack_schedule):
    """Recompute the defined set at each slack and flag membership flips.

    Each flip is reported as (partition, slack before, slack after,
    member before, member after).
    """
    if not slack_schedule:
        raise EvalError('empty slack schedule')
    _check_universe(universe, EvalConfig(config.max_card, max(slack_schedule)))
    sets = []
    for k in slack_schedule:
        sets.append(defined_set(f, free_var, universe,
                                EvalConfig(config.max_card, k)))
    flips = []
    for before, after, k0, k1 in zip(sets, sets[1:], slack_schedule, slack_schedule[1:]):
        for pi in sorted(before ^ after, key=lambda p: (p.card, p.parts())):
            flips.append((pi, k0, k1, pi in before, pi in after))
    return StabilityReport(list(slack_schedule), [len(s) for s in sets], flips)
