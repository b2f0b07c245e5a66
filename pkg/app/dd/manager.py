"""
Reduced ordered binary decision diagrams.

A `Manager` owns the variable order, the hash-consed unique table and the
operation cache. Functions are handed out as `Func` values; two `Func` values
of one manager denote the same Boolean function iff their roots are the same
node. Variable ids are levels: the order is fixed at creation, and
`add_var` only appends below the existing variables.

Nodes are plain objects kept alive by reference; the unique table holds them
weakly, so a node disappears as soon as no `Func`, parent node or cache entry
refers to it.
"""
import time
import weakref
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from app.core.errors import DeadlineExceeded, FormatError, NodeLimitExceeded, UsageError
from app.core.metrics import metrics

VarId = int
VarSet = FrozenSet[VarId]
Assignment = Dict[VarId, int]

TERMINAL_LEVEL = 1 << 30
DEFAULT_NODE_LIMIT = 1 << 22
_DEADLINE_CHECK_INTERVAL = 1024

BINARY_OPS = ("and", "or", "xor", "iff", "implies")
_COMMUTATIVE = frozenset(("and", "or", "xor", "iff"))


def varset(vars: Iterable[VarId] = ()) -> VarSet:
    return frozenset(vars)


class _Node:
    __slots__ = ("var", "low", "high", "uid", "__weakref__")

    def __init__(self, var: int, low: Optional["_Node"], high: Optional["_Node"], uid: int):
        self.var = var
        self.low = low
        self.high = high
        self.uid = uid


class Func:
    """Handle to a Boolean function owned by a Manager"""

    __slots__ = ("manager", "node")

    def __init__(self, manager: "Manager", node: _Node):
        self.manager = manager
        self.node = node

    @property
    def root(self) -> int:
        return self.node.uid

    @property
    def is_true(self) -> bool:
        return self.node is self.manager._true

    @property
    def is_false(self) -> bool:
        return self.node is self.manager._false

    @property
    def is_constant(self) -> bool:
        return self.node.var == TERMINAL_LEVEL

    def __eq__(self, other) -> bool:
        return isinstance(other, Func) and self.manager is other.manager and self.node is other.node

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((id(self.manager), self.node.uid))

    def __bool__(self):
        raise TypeError("truth value of a Func is ambiguous; use is_true / is_false")

    def __and__(self, other: "Func") -> "Func":
        return self.manager.apply("and", self, other)

    def __or__(self, other: "Func") -> "Func":
        return self.manager.apply("or", self, other)

    def __xor__(self, other: "Func") -> "Func":
        return self.manager.apply("xor", self, other)

    def __invert__(self) -> "Func":
        return self.manager.negate(self)

    def implies(self, other: "Func") -> "Func":
        return self.manager.apply("implies", self, other)

    def iff(self, other: "Func") -> "Func":
        return self.manager.apply("iff", self, other)

    def __repr__(self) -> str:
        if self.is_constant:
            return f"Func({int(self.is_true)})"
        return f"Func(root={self.node.uid}, top={self.manager.name_of(self.node.var)})"


class Manager:
    """Unique table, operation cache and variable order"""

    _instances = 0

    def __init__(self, var_names: Sequence[str], node_limit: Optional[int] = DEFAULT_NODE_LIMIT):
        if not var_names:
            raise UsageError("a manager needs at least one variable")
        self._names: List[str] = []
        self._index: Dict[str, VarId] = {}
        for name in var_names:
            self._register(name)

        self.node_limit = node_limit
        self.deadline: Optional[float] = None
        self.timeout_s: Optional[float] = None

        self._unique: "weakref.WeakValueDictionary[Tuple[int, int, int], _Node]" = weakref.WeakValueDictionary()
        self._cache: Dict[tuple, _Node] = {}
        self._false = _Node(TERMINAL_LEVEL, None, None, 0)
        self._true = _Node(TERMINAL_LEVEL, None, None, 1)
        self._next_uid = 2
        self._created = 0

        Manager._instances += 1
        self.manager_id = Manager._instances

    # ------------------------------------------------------------------ variables

    def _register(self, name: str) -> VarId:
        if name in self._index:
            raise FormatError(f"duplicate variable name '{name}'")
        self._index[name] = len(self._names)
        self._names.append(name)
        return self._index[name]

    def add_var(self, name: str) -> VarId:
        """Append a fresh variable below every existing one"""
        return self._register(name)

    @property
    def var_count(self) -> int:
        return len(self._names)

    @property
    def order(self) -> List[str]:
        return list(self._names)

    def id_of(self, name: str) -> VarId:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable '{name}'") from None

    def has_var(self, name: str) -> bool:
        return name in self._index

    def name_of(self, v: VarId) -> str:
        self._check_var(v)
        return self._names[v]

    def _check_var(self, v: VarId) -> None:
        if not isinstance(v, int) or v < 0 or v >= len(self._names):
            raise UsageError(f"invalid variable id {v!r} (manager has {len(self._names)} variables)")

    # ------------------------------------------------------------------ resources

    def set_deadline(self, timeout_s: Optional[float]) -> None:
        self.timeout_s = timeout_s
        self.deadline = None if timeout_s is None else time.monotonic() + timeout_s

    def check_deadline(self) -> None:
        """Raise DeadlineExceeded once the armed deadline has passed"""
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise DeadlineExceeded(self.timeout_s)

    @property
    def node_count(self) -> int:
        return len(self._unique)

    def collect_garbage(self) -> None:
        """Drop the operation cache so unreferenced nodes can be reclaimed"""
        self._cache.clear()
        metrics.increment_counter("dd.cache_clears")

    def _mk(self, var: int, low: _Node, high: _Node) -> _Node:
        if low is high:
            return low
        key = (var, low.uid, high.uid)
        node = self._unique.get(key)
        if node is not None:
            return node
        if self.node_limit is not None and len(self._unique) >= self.node_limit:
            self._cache.clear()
            if len(self._unique) >= self.node_limit:
                raise NodeLimitExceeded(self.node_limit)
        node = _Node(var, low, high, self._next_uid)
        self._next_uid += 1
        self._unique[key] = node
        self._created += 1
        if self._created % _DEADLINE_CHECK_INTERVAL == 0:
            metrics.increment_counter("dd.nodes_created", _DEADLINE_CHECK_INTERVAL)
            self.check_deadline()
        return node

    def _wrap(self, node: _Node) -> Func:
        return Func(self, node)

    def _node_of(self, f: Func) -> _Node:
        if not isinstance(f, Func) or f.manager is not self:
            raise UsageError("function belongs to a different manager")
        return f.node

    # ------------------------------------------------------------------ constructors

    @property
    def true(self) -> Func:
        return Func(self, self._true)

    @property
    def false(self) -> Func:
        return Func(self, self._false)

    def constant(self, b) -> Func:
        return self.true if b else self.false

    def var(self, v: VarId) -> Func:
        self._check_var(v)
        return self._wrap(self._mk(v, self._false, self._true))

    def named(self, name: str) -> Func:
        return self.var(self.id_of(name))

    def cube(self, assignment: Mapping[VarId, int]) -> Func:
        """Conjunction of literals"""
        node = self._true
        for v in sorted(assignment, reverse=True):
            self._check_var(v)
            if assignment[v]:
                node = self._mk(v, self._false, node)
            else:
                node = self._mk(v, node, self._false)
        return self._wrap(node)

    def conjoin(self, funcs: Iterable[Func]) -> Func:
        result = self.true
        for f in funcs:
            result = self.apply("and", result, f)
        return result

    def disjoin(self, funcs: Iterable[Func]) -> Func:
        result = self.false
        for f in funcs:
            result = self.apply("or", result, f)
        return result

    # ------------------------------------------------------------------ boolean algebra

    def apply(self, op: str, f: Func, g: Func) -> Func:
        if op not in BINARY_OPS:
            raise UsageError(f"unknown operator '{op}'")
        return self._wrap(self._apply(op, self._node_of(f), self._node_of(g)))

    def _terminal_case(self, op: str, f: _Node, g: _Node) -> Optional[_Node]:
        T, F = self._true, self._false
        if op == "and":
            if f is F or g is F:
                return F
            if f is T:
                return g
            if g is T or f is g:
                return f
        elif op == "or":
            if f is T or g is T:
                return T
            if f is F:
                return g
            if g is F or f is g:
                return f
        elif op == "xor":
            if f is g:
                return F
            if f is F:
                return g
            if g is F:
                return f
            if f is T:
                return self._negate(g)
            if g is T:
                return self._negate(f)
        elif op == "iff":
            if f is g:
                return T
            if f is T:
                return g
            if g is T:
                return f
            if f is F:
                return self._negate(g)
            if g is F:
                return self._negate(f)
        else:  # implies
            if f is F or g is T or f is g:
                return T
            if f is T:
                return g
            if g is F:
                return self._negate(f)
        return None

    def _apply(self, op: str, f: _Node, g: _Node) -> _Node:
        r = self._terminal_case(op, f, g)
        if r is not None:
            return r
        if op in _COMMUTATIVE and f.uid > g.uid:
            f, g = g, f
        key = (op, f.uid, g.uid)
        r = self._cache.get(key)
        if r is not None:
            return r
        v = min(f.var, g.var)
        f0, f1 = (f.low, f.high) if f.var == v else (f, f)
        g0, g1 = (g.low, g.high) if g.var == v else (g, g)
        r = self._mk(v, self._apply(op, f0, g0), self._apply(op, f1, g1))
        self._cache[key] = r
        return r

    def negate(self, f: Func) -> Func:
        return self._wrap(self._negate(self._node_of(f)))

    def _negate(self, f: _Node) -> _Node:
        if f is self._true:
            return self._false
        if f is self._false:
            return self._true
        key = ("not", f.uid)
        r = self._cache.get(key)
        if r is None:
            r = self._mk(f.var, self._negate(f.low), self._negate(f.high))
            self._cache[key] = r
        return r

    def ite(self, c: Func, t: Func, e: Func) -> Func:
        return self._wrap(self._ite(self._node_of(c), self._node_of(t), self._node_of(e)))

    def _ite(self, c: _Node, t: _Node, e: _Node) -> _Node:
        T, F = self._true, self._false
        if c is T or t is e:
            return t
        if c is F:
            return e
        if t is T and e is F:
            return c
        if t is F and e is T:
            return self._negate(c)
        key = ("ite", c.uid, t.uid, e.uid)
        r = self._cache.get(key)
        if r is not None:
            return r
        v = min(c.var, t.var, e.var)
        c0, c1 = (c.low, c.high) if c.var == v else (c, c)
        t0, t1 = (t.low, t.high) if t.var == v else (t, t)
        e0, e1 = (e.low, e.high) if e.var == v else (e, e)
        r = self._mk(v, self._ite(c0, t0, e0), self._ite(c1, t1, e1))
        self._cache[key] = r
        return r

    # ------------------------------------------------------------------ quantification

    def exists(self, f: Func, vs: Iterable[VarId]) -> Func:
        return self._quantify(f, vs, "or")

    def forall(self, f: Func, vs: Iterable[VarId]) -> Func:
        return self._quantify(f, vs, "and")

    def _quantify(self, f: Func, vs: Iterable[VarId], join: str) -> Func:
        node = self._node_of(f)
        qvars = frozenset(vs)
        for v in qvars:
            self._check_var(v)
        if not qvars:
            return f
        return self._wrap(self._quant(node, qvars, max(qvars), join, {}))

    def _quant(self, f: _Node, qvars: FrozenSet[int], last: int, join: str, memo: Dict[int, _Node]) -> _Node:
        if f.var > last:
            return f
        r = memo.get(f.uid)
        if r is not None:
            return r
        r0 = self._quant(f.low, qvars, last, join, memo)
        if f.var in qvars:
            # short-circuit on the absorbing element of the join
            if (join == "or" and r0 is self._true) or (join == "and" and r0 is self._false):
                r = r0
            else:
                r = self._apply(join, r0, self._quant(f.high, qvars, last, join, memo))
        else:
            r = self._mk(f.var, r0, self._quant(f.high, qvars, last, join, memo))
        memo[f.uid] = r
        return r

    def and_exists(self, f: Func, g: Func, vs: Iterable[VarId]) -> Func:
        """exists(f & g, vs) without building the conjunction first"""
        fn, gn = self._node_of(f), self._node_of(g)
        qvars = frozenset(vs)
        for v in qvars:
            self._check_var(v)
        if not qvars:
            return self._wrap(self._apply("and", fn, gn))
        return self._wrap(self._and_exists(fn, gn, qvars, max(qvars), {}, {}))

    def _and_exists(self, f: _Node, g: _Node, qvars: FrozenSet[int], last: int,
                    memo: Dict[Tuple[int, int], _Node], qmemo: Dict[int, _Node]) -> _Node:
        T, F = self._true, self._false
        if f is F or g is F:
            return F
        if f is T and g is T:
            return T
        if f is T or f is g:
            return self._quant(g, qvars, last, "or", qmemo)
        if g is T:
            return self._quant(f, qvars, last, "or", qmemo)
        if f.uid > g.uid:
            f, g = g, f
        key = (f.uid, g.uid)
        r = memo.get(key)
        if r is not None:
            return r
        v = min(f.var, g.var)
        if v > last:
            r = self._apply("and", f, g)
        else:
            f0, f1 = (f.low, f.high) if f.var == v else (f, f)
            g0, g1 = (g.low, g.high) if g.var == v else (g, g)
            r0 = self._and_exists(f0, g0, qvars, last, memo, qmemo)
            if v in qvars:
                if r0 is T:
                    r = T
                else:
                    r = self._apply("or", r0, self._and_exists(f1, g1, qvars, last, memo, qmemo))
            else:
                r = self._mk(v, r0, self._and_exists(f1, g1, qvars, last, memo, qmemo))
        memo[key] = r
        return r

    # ------------------------------------------------------------------ inspection

    def support(self, f: Func) -> VarSet:
        node = self._node_of(f)
        seen = set()
        found = set()
        stack = [node]
        while stack:
            n = stack.pop()
            if n.var == TERMINAL_LEVEL or n.uid in seen:
                continue
            seen.add(n.uid)
            found.add(n.var)
            stack.append(n.low)
            stack.append(n.high)
        return frozenset(found)

    def dag_size(self, f: Func) -> int:
        seen = set()
        stack = [self._node_of(f)]
        while stack:
            n = stack.pop()
            if n.uid in seen:
                continue
            seen.add(n.uid)
            if n.var != TERMINAL_LEVEL:
                stack.append(n.low)
                stack.append(n.high)
        return len(seen)

    def eval(self, f: Func, assignment: Mapping[VarId, int]) -> int:
        node = self._node_of(f)
        while node.var != TERMINAL_LEVEL:
            try:
                bit = assignment[node.var]
            except KeyError:
                raise UsageError(f"assignment misses support variable '{self._names[node.var]}'") from None
            node = node.high if bit else node.low
        return 1 if node is self._true else 0

    def cofactor(self, f: Func, assignment: Mapping[VarId, int]) -> Func:
        node = self._node_of(f)
        if not assignment:
            return f
        for v in assignment:
            self._check_var(v)
        return self._wrap(self._restrict(node, assignment, max(assignment), {}))

    def _restrict(self, f: _Node, assignment: Mapping[VarId, int], last: int, memo: Dict[int, _Node]) -> _Node:
        if f.var > last:
            return f
        r = memo.get(f.uid)
        if r is not None:
            return r
        if f.var in assignment:
            r = self._restrict(f.high if assignment[f.var] else f.low, assignment, last, memo)
        else:
            r = self._mk(f.var, self._restrict(f.low, assignment, last, memo),
                         self._restrict(f.high, assignment, last, memo))
        memo[f.uid] = r
        return r

    def rename(self, f: Func, mapping: Mapping[VarId, VarId]) -> Func:
        """Substitute variables by variables, preserving the relative order of the support"""
        node = self._node_of(f)
        for a, b in mapping.items():
            self._check_var(a)
            self._check_var(b)
        supp = sorted(self.support(f))
        moved = [mapping.get(v, v) for v in supp]
        if any(moved[k] >= moved[k + 1] for k in range(len(moved) - 1)):
            raise UsageError("rename map is not order-compatible with the function's support")
        if all(mapping.get(v, v) == v for v in supp):
            return f
        return self._wrap(self._rename(node, mapping, {}))

    def _rename(self, f: _Node, mapping: Mapping[VarId, VarId], memo: Dict[int, _Node]) -> _Node:
        if f.var == TERMINAL_LEVEL:
            return f
        r = memo.get(f.uid)
        if r is None:
            r = self._mk(mapping.get(f.var, f.var), self._rename(f.low, mapping, memo),
                         self._rename(f.high, mapping, memo))
            memo[f.uid] = r
        return r

    def _require_over(self, f: Func, over: Iterable[VarId]) -> List[VarId]:
        ordered = sorted(set(over))
        missing = self.support(f) - set(ordered)
        if missing:
            names = ", ".join(self._names[v] for v in sorted(missing))
            raise UsageError(f"function depends on variables outside the counted set: {names}")
        return ordered

    def sat_count(self, f: Func, over: Iterable[VarId]) -> int:
        ordered = self._require_over(f, over)
        position = {v: k for k, v in enumerate(ordered)}
        n = len(ordered)

        def index(node: _Node) -> int:
            return n if node.var == TERMINAL_LEVEL else position[node.var]

        memo: Dict[int, int] = {}

        def count(node: _Node) -> int:
            if node is self._true:
                return 1
            if node is self._false:
                return 0
            c = memo.get(node.uid)
            if c is None:
                k = index(node)
                c = (count(node.low) << (index(node.low) - k - 1)) + \
                    (count(node.high) << (index(node.high) - k - 1))
                memo[node.uid] = c
            return c

        root = self._node_of(f)
        return count(root) << index(root)

    def iter_paths(self, f: Func) -> Iterator[Assignment]:
        """Disjoint cubes (partial assignments) covering f, one per path to true"""
        root = self._node_of(f)
        stack: List[Tuple[_Node, Assignment]] = [(root, {})]
        while stack:
            node, cube = stack.pop()
            if node is self._false:
                continue
            if node is self._true:
                yield cube
                continue
            stack.append((node.high, {**cube, node.var: 1}))
            stack.append((node.low, {**cube, node.var: 0}))

    def enumerate_cubes(self, f: Func, over: Iterable[VarId]) -> Iterator[Assignment]:
        """Every satisfying total assignment over `over`"""
        ordered = self._require_over(f, over)
        for cube in self.iter_paths(f):
            free = [v for v in ordered if v not in cube]
            for bits in range(1 << len(free)):
                minterm = dict(cube)
                for k, v in enumerate(free):
                    minterm[v] = (bits >> k) & 1
                yield minterm

    def split_cubes(self, f: Func, over: Iterable[VarId]) -> List[Tuple[Assignment, Func]]:
        """Group f by the paths through the `over` variables.

        Returns (cube over `over`, cofactor) pairs for every path that leaves the
        `over` levels at a node other than false. The `over` variables must
        precede every other variable in the support of f.
        """
        root = self._node_of(f)
        over_set = frozenset(over)
        last = max(over_set) if over_set else -1
        result: List[Tuple[Assignment, Func]] = []
        stack: List[Tuple[_Node, Assignment]] = [(root, {})]
        while stack:
            self.check_deadline()
            node, cube = stack.pop()
            if node is self._false:
                continue
            if node.var in over_set:
                stack.append((node.high, {**cube, node.var: 1}))
                stack.append((node.low, {**cube, node.var: 0}))
                continue
            if node.var != TERMINAL_LEVEL and node.var < last:
                raise UsageError("split variables must precede the remaining support")
            result.append((cube, self._wrap(node)))
        return result

    def audit(self) -> int:
        """Structural check of the unique table; returns the live node count"""
        seen = set()
        for key, node in list(self._unique.items()):
            if node.low is node.high:
                raise AssertionError(f"unreduced node {node.uid}")
            if key != (node.var, node.low.uid, node.high.uid):
                raise AssertionError(f"unique table key mismatch at node {node.uid}")
            if not (node.var < node.low.var and node.var < node.high.var):
                raise AssertionError(f"order violation at node {node.uid}")
            if key in seen:
                raise AssertionError(f"duplicate triple {key}")
            seen.add(key)
        return len(seen)


def new_manager(var_names: Sequence[str], node_limit: Optional[int] = DEFAULT_NODE_LIMIT) -> Manager:
    return Manager(var_names, node_limit)
