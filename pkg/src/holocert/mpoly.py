"""Sparse multivariate polynomials over Q(i).

Exponent vectors are keyed against an ordered variable tuple.  The
canonical variable order is w < b2 < b1 < b0 (then any other name
alphabetically), matching the elimination order beta2, beta1, beta0.
Terms are printed and compared in graded-lexicographic order.

Resultants are computed as Sylvester determinants by fraction-free
Bareiss elimination, and exact division is leading-term reduction in
graded-lex order; both stay inside Q(i)[vars] with no rounding.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .gaussian import GaussianRational, ZERO, ONE

_CANONICAL_RANK = {"w": 0, "b2": 1, "b1": 2, "b0": 3}


def _var_key(name: str):
    return (_CANONICAL_RANK.get(name, 4), name)


class MPolyError(ArithmeticError):
    pass


class ExactDivisionError(MPolyError):
    """Raised when exact_div meets a nonzero remainder (carried along)."""

    def __init__(self, message: str, remainder: "MPoly"):
        super().__init__(message)
        self.remainder = remainder


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[tuple, GaussianRational] | None = None):
        vars = tuple(vars)
        terms = dict(terms or {})
        # drop zero coefficients, then drop variables unused by every term
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        if vars:
            used = [any(e[i] for e in terms) for i in range(len(vars))]
            if not all(used):
                keep = [i for i, u in enumerate(used) if u]
                vars = tuple(vars[i] for i in keep)
                terms = {tuple(e[i] for i in keep): c for e, c in terms.items()}
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "MPoly":
        c = _as_gq(c)
        return MPoly((), {(): c} if not c.is_zero() else {})

    @staticmethod
    def var(name: str) -> "MPoly":
        return MPoly((name,), {(1,): ONE})

    @staticmethod
    def zero() -> "MPoly":
        return MPoly()

    @staticmethod
    def one() -> "MPoly":
        return MPoly.const(1)

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> GaussianRational:
        z = (0,) * len(self.vars)
        return self.terms.get(z, ZERO)

    def as_constant(self) -> GaussianRational:
        if not self.is_constant():
            raise MPolyError(f"not a constant polynomial: {self}")
        return self.constant_term()

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str | None = None) -> int:
        """Degree in var, or total degree when var is None; -1 for the zero poly."""
        if var is None:
            return self.total_degree()
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = _align(self, o)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = _align(self, o)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, ZERO) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = _align(self, o)
        terms: dict[tuple, GaussianRational] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MPoly(a.vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        c = GaussianRational._coerce(other)
        if c is None:
            return NotImplemented
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise MPolyError("polynomial power wants a nonnegative integer")
        out = MPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus and substitution ------------------------------------------

    def derivative(self, var: str) -> "MPoly":
        if var not in self.vars:
            return MPoly.zero()
        i = self.vars.index(var)
        terms: dict[tuple, GaussianRational] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            k = e2[i]
            e2[i] = k - 1
            e2 = tuple(e2)
            s = terms.get(e2, ZERO) + c * k
            if not s.is_zero():
                terms[e2] = s
            else:
                terms.pop(e2, None)
        return MPoly(self.vars, terms)

    def coeffs_in(self, var: str) -> list["MPoly"]:
        """Coefficients [c0, c1, ...] of powers of var, as polynomials in the rest."""
        n = self.degree(var)
        if n < 0:
            return []
        if var not in self.vars:
            return [self]
        i = self.vars.index(var)
        rest = tuple(v for j, v in enumerate(self.vars) if j != i)
        buckets: list[dict] = [dict() for _ in range(n + 1)]
        for e, c in self.terms.items():
            re = tuple(x for j, x in enumerate(e) if j != i)
            buckets[e[i]][re] = c
        return [MPoly(rest, b) for b in buckets]

    def coeff_of(self, var: str, k: int) -> "MPoly":
        cs = self.coeffs_in(var)
        return cs[k] if 0 <= k < len(cs) else MPoly.zero()

    def substitute(self, var: str, value: "MPoly | GaussianRational | int") -> "MPoly":
        """Replace var by a polynomial (or constant), exactly."""
        g = _coerce(value)
        if g is None:
            raise MPolyError(f"cannot substitute value of type {type(value)!r}")
        cs = self.coeffs_in(var)
        if not cs:
            return MPoly.zero()
        out = cs[-1]
        for c in reversed(cs[:-1]):
            out = out * g + c
        return out

    def evaluate(self, bindings: Mapping[str, GaussianRational]) -> GaussianRational:
        """Full evaluation; every variable of the polynomial must be bound."""
        missing = [v for v in self.vars if v not in bindings]
        if missing:
            raise MPolyError(f"evaluation missing bindings for {missing}")
        vals = [_as_gq(bindings[v]) for v in self.vars]
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    # -- printing -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda ec: _grlex_key(ec[0]), reverse=True)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"({c})"]
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self})"


def _as_gq(c) -> GaussianRational:
    g = GaussianRational._coerce(c)
    if g is None:
        raise MPolyError(f"cannot use {type(c)!r} as a coefficient")
    return g


def _coerce(x) -> MPoly | None:
    if isinstance(x, MPoly):
        return x
    g = GaussianRational._coerce(x)
    if g is not None:
        return MPoly.const(g)
    return None


def _align(a: MPoly, b: MPoly) -> tuple[MPoly, MPoly]:
    """Rewrite both polynomials over the union variable set (canonical order)."""
    if a.vars == b.vars:
        return a, b
    union = tuple(sorted(set(a.vars) | set(b.vars), key=_var_key))
    return _extend(a, union), _extend(b, union)


def _extend(p: MPoly, union: tuple[str, ...]) -> MPoly:
    if p.vars == union:
        return p
    pos = [union.index(v) for v in p.vars]
    terms = {}
    for e, c in p.terms.items():
        e2 = [0] * len(union)
        for i, k in zip(pos, e):
            e2[i] = k
        terms[tuple(e2)] = c
    out = MPoly.__new__(MPoly)
    object.__setattr__(out, "vars", union)
    object.__setattr__(out, "terms", terms)
    return out


# -- exact division ----------------------------------------------------------


def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Exact quotient f/g; raises ExactDivisionError carrying the remainder.

    Standard single-divisor reduction in graded-lex order: the remainder is
    zero exactly when g divides f.  The loop works on raw exponent dicts
    over the aligned variable set so tuple lengths stay fixed throughout.
    """
    f = _coerce(f)
    g = _coerce(g)
    if g is None or f is None:
        raise MPolyError("exact_div wants polynomials")
    if g.is_zero():
        raise MPolyError("exact division by the zero polynomial")
    a, b = _align(f, g)
    lt_e, lt_c = max(b.terms.items(), key=lambda ec: _grlex_key(ec[0]))
    cur = dict(a.terms)
    quo_terms: dict[tuple, GaussianRational] = {}
    rem_terms: dict[tuple, GaussianRational] = {}
    while cur:
        e = max(cur, key=_grlex_key)
        c = cur.pop(e)
        if all(x >= y for x, y in zip(e, lt_e)):
            qe = tuple(x - y for x, y in zip(e, lt_e))
            qc = c / lt_c
            quo_terms[qe] = qc
            for be, bc in b.terms.items():
                if be == lt_e:
                    continue  # the leading term cancels by construction
                ne = tuple(x + y for x, y in zip(qe, be))
                s = cur.get(ne, ZERO) - qc * bc
                if s.is_zero():
                    cur.pop(ne, None)
                else:
                    cur[ne] = s
        else:
            rem_terms[e] = c
    if rem_terms:
        rem = MPoly(a.vars, rem_terms)
        raise ExactDivisionError(f"nonzero remainder in exact division: {rem}", rem)
    return MPoly(a.vars, quo_terms)


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ExactDivisionError:
        return False


# -- determinants and resultants ---------------------------------------------


def bareiss_det(rows: list[list[MPoly]]) -> MPoly:
    """Fraction-free Bareiss determinant of a square MPoly matrix."""
    n = len(rows)
    if n == 0:
        return MPoly.one()
    m = [[_coerce(x) for x in row] for row in rows]
    if any(len(row) != n for row in m):
        raise MPolyError("bareiss_det wants a square matrix")
    sign = 1
    prev = MPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = MPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester(f: MPoly, g: MPoly, var: str) -> list[list[MPoly]]:
    n = f.degree(var)
    m = g.degree(var)
    fc = f.coeffs_in(var)  # ascending
    gc = g.coeffs_in(var)
    size = n + m
    rows = []
    for i in range(m):
        row = [MPoly.zero()] * size
        for k in range(n + 1):
            row[i + k] = fc[n - k]
        rows.append(row)
    for i in range(n):
        row = [MPoly.zero()] * size
        for k in range(m + 1):
            row[i + k] = gc[m - k]
        rows.append(row)
    return rows


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Classical resultant with respect to var, as a polynomial in the rest.

    Degrees are read off the stored terms, so identically-zero leading
    coefficients have already been stripped.  If exactly one argument is
    constant in var the convention Res(c, g) = c^deg(g) applies; two
    constants are an error.
    """
    f = _coerce(f)
    g = _coerce(g)
    n = f.degree(var)
    m = g.degree(var)
    if n <= 0 and m <= 0:
        raise MPolyError(
            f"resultant in {var!r} needs positive degree in at least one argument "
            f"(degrees {n}, {m} after stripping)"
        )
    if n <= 0:
        if f.is_zero():
            return MPoly.zero()
        return f**m
    if m <= 0:
        if g.is_zero():
            return MPoly.zero()
        return g**n
    return bareiss_det(sylvester(f, g, var))


def poly_from_coeffs(var: str, coeffs: Iterable) -> MPoly:
    """Univariate helper: coeffs are ascending powers of var."""
    x = MPoly.var(var)
    out = MPoly.zero()
    for k, c in enumerate(coeffs):
        out = out + _coerce(c) * x**k
    return out
