"""Dense finite-dimensional verification of the per-vertex verdicts.

Everything here works on an explicit complex matrix ``A`` and never looks at
the tree: the modulus ``|A| = (A* A)**(1/2)``, its spectral projections
``E_k``, the polar factor ``U`` with ``A = U |A|``, the optimal constant of
the inequality ``<E(s)|A|f, |A|f> <= c <E(s)Af, Af>``, and the intertwiner
``T`` with ``T A = |A|`` that commutes with every ``E_k``.

Most checks accept a ``subspace`` argument, a list of basis labels.  The
check is then restricted to vectors supported on those labels, which is how
truncations of infinite trees are compared on their interior.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import scalar
from .measures import IDENTITY, AtomicMeasure, FunctionOnAtoms
from .scalar import INF
from .shift import WeightedShift

DEFAULT_DIM_CAP = 2000


class NumericalError(RuntimeError):
    """A decomposition failed its residual check."""


class DimensionCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    lin: float = 1e-9
    cluster: float = 1e-7
    verdict: float = 1e-6

    def __post_init__(self):
        if not (0 < self.lin < self.cluster < self.verdict):
            raise ValueError("tolerances must satisfy 0 < lin < cluster < verdict")


def dim_cap() -> int:
    return int(os.environ.get("TREESHIFT_DIM_CAP", DEFAULT_DIM_CAP))


def _opnorm(M) -> float:
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


class MatrixOperator:
    """A square complex matrix with its modulus, spectral atoms and polar factor.

    Attributes
    ----------
    A : (n, n) complex array
    labels : basis labels (tree vertices for shifts)
    atoms : sorted distinct eigenvalues ``t_k`` of ``|A|`` after clustering
    projections : list of ``E_k``
    modulus : ``|A| = sum_k t_k E_k``
    U : partial isometry, ``A = U |A|``, zero on ``ker |A|``
    fragile : some gap between clusters is below ``10 * tol.cluster``
    """

    def __init__(self, A, labels=None, tol: Tolerances | None = None):
        A = np.array(A, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("expected a square matrix")
        n = A.shape[0]
        if n > dim_cap():
            raise DimensionCapExceeded(f"dimension {n} exceeds cap {dim_cap()}")
        self.A = A
        self.dim = n
        self.labels = list(range(n)) if labels is None else list(labels)
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        self.tol = tol or Tolerances()
        self.scale = max(1.0, _opnorm(A))
        self._decompose()

    @classmethod
    def from_shift(cls, s: WeightedShift, tol: Tolerances | None = None) -> "MatrixOperator":
        """Column ``e_u`` is ``S e_u``; ``A* A`` must come out diagonal.

        A frontier vertex with a known untruncated norm gets one extra leaf
        child, labelled ``("cap", u)``, whose weight carries that norm.  The
        matrix then sees every vertex norm the classifier sees.
        """
        tree = s.tree
        caps = [
            u for u in tree.vertices
            if u in s.frontier and s.norm_known(u) and scalar.sign(s.effective_norm_sq(u), s.eps) > 0
        ]
        labels = list(tree.vertices) + [("cap", u) for u in caps]
        n = len(labels)
        if n > dim_cap():
            raise DimensionCapExceeded(f"dimension {n} exceeds cap {dim_cap()}")
        A = np.zeros((n, n), dtype=complex)
        for v in tree.non_root:
            A[tree.index(v), tree.index(tree.parent(v))] = s.weight_float(v)
        for j, u in enumerate(caps):
            A[len(tree) + j, tree.index(u)] = np.sqrt(scalar.to_float(s.effective_norm_sq(u)))
        m = cls(A, labels=labels, tol=tol)
        gram = A.conj().T @ A
        expected = np.diag(
            [scalar.to_float(s.effective_norm_sq(u)) for u in tree.vertices] + [0.0] * len(caps)
        )
        if np.max(np.abs(gram - expected), initial=0.0) > m.tol.lin * m.scale**2:
            raise NumericalError("A*A of a weighted shift is not the diagonal of vertex norms")
        return m

    # -- decomposition -------------------------------------------------------

    def _decompose(self):
        A, tol = self.A, self.tol
        n = self.dim
        if n == 0:
            self.atoms, self.projections, self.diameters = [], [], []
            self.modulus = self.U = np.zeros((0, 0), complex)
            self.fragile = False
            return
        # singular values of A are the square roots of the eigenvalues of A*A;
        # the SVD resolves small ones far better than eigh(A*A) does
        try:
            _, sv, Vh = np.linalg.svd(A)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"SVD failed: {exc}\n{A!r}") from exc
        V = Vh.conj().T
        gram = A.conj().T @ A
        resid = _opnorm(gram - (V * sv**2) @ V.conj().T)
        if resid > tol.lin * max(1.0, _opnorm(gram)):
            raise NumericalError(f"eigendecomposition residual {resid:.3e}\n{A!r}")

        order = np.argsort(sv)
        groups: list[list[int]] = []
        for i in order:
            if groups and sv[i] - sv[groups[-1][-1]] <= tol.cluster * self.scale:
                groups[-1].append(i)
            else:
                groups.append([int(i)])
        self.atoms, self.projections, self.diameters = [], [], []
        for g in groups:
            t = float(np.mean(sv[g]))
            if sv[g[0]] <= tol.cluster * self.scale:
                t = 0.0
            Q = V[:, g]
            self.atoms.append(t)
            self.projections.append(Q @ Q.conj().T)
            self.diameters.append(float(sv[g[-1]] - sv[g[0]]))
        gaps = np.diff(self.atoms)
        self.fragile = bool(np.any(gaps < 10 * tol.cluster * self.scale))
        self.modulus = sum(t * E for t, E in zip(self.atoms, self.projections))
        self.U = sum(
            (A @ E) / t for t, E in zip(self.atoms, self.projections) if t > 0
        ) if any(t > 0 for t in self.atoms) else np.zeros_like(A)
        if _opnorm(self.modulus @ self.modulus - gram) > tol.verdict * max(1.0, _opnorm(gram)):
            raise NumericalError("|A|**2 does not reproduce A*A")

    # -- helpers -------------------------------------------------------------

    def indices(self, labels) -> list[int]:
        return [self._pos[lab] for lab in labels]

    def subspace_basis(self, subspace=None):
        """Columns spanning the subspace (identity when ``subspace`` is None)."""
        if subspace is None:
            return np.eye(self.dim, dtype=complex)
        return np.eye(self.dim, dtype=complex)[:, self.indices(subspace)]

    def function_of_modulus(self, phi: FunctionOnAtoms):
        return sum(_phi_float(phi, t) * E for t, E in zip(self.atoms, self.projections))

    def range_projection(self, M):
        """Orthogonal projection onto the column space of ``M``."""
        if M.size == 0:
            return np.zeros((self.dim, self.dim), complex)
        Wl, sv, _ = np.linalg.svd(M, full_matrices=False)
        keep = sv > self.tol.lin * self.scale
        Q = Wl[:, keep]
        return Q @ Q.conj().T

    def is_zero(self) -> bool:
        return _opnorm(self.A) <= self.tol.lin

    def __repr__(self):
        return f"<MatrixOperator dim={self.dim} atoms={len(self.atoms)}>"


def _phi_float(phi: FunctionOnAtoms, t: float) -> float:
    return float(phi.sq(float(t) ** 2)) ** 0.5


def from_shift(s: WeightedShift, tol: Tolerances | None = None) -> MatrixOperator:
    return MatrixOperator.from_shift(s, tol)


def modulus_and_atoms(m: MatrixOperator):
    return m.modulus, list(m.atoms), list(m.projections)


# -- measures -------------------------------------------------------------------


def _mass_tol(m: MatrixOperator, f) -> float:
    return m.tol.lin * m.scale**2 * max(1.0, float(np.vdot(f, f).real))


def measure_pair(m: MatrixOperator, f):
    """``(mu_image, mu_modulus)`` with masses ``||E_k A f||**2`` and ``||E_k |A| f||**2``."""
    f = np.asarray(f, dtype=complex)
    Af, Mf = m.A @ f, m.modulus @ f
    img, mod = {}, {}
    for t, E in zip(m.atoms, m.projections):
        img[t * t] = float(np.linalg.norm(E @ Af) ** 2)
        mod[t * t] = float(np.linalg.norm(E @ Mf) ** 2)
    mt = _mass_tol(m, f)
    # atoms are already clustered, so the measures compare keys exactly
    eps = m.tol.cluster
    return AtomicMeasure(img, eps=eps, mass_tol=mt), AtomicMeasure(mod, eps=eps, mass_tol=mt)


def probe_vectors(m: MatrixOperator, rng, n_random: int = 100, subspace=None) -> list:
    """Basis vectors, eigenvectors of ``|A|`` (full space only), and random vectors.

    Eigenvectors matter: a generic vector charges every atom of ``|A|``, so
    it can never witness a failure of absolute continuity.
    """
    W = m.subspace_basis(subspace)
    vecs = [W[:, j] for j in range(W.shape[1])]
    if subspace is None:
        for E in m.projections:
            w, X = np.linalg.eigh(E)
            vecs.extend(X[:, j] for j in np.flatnonzero(w > 0.5))
    r = W.shape[1]
    for _ in range(n_random):
        g = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        vecs.append(W @ g)
    return vecs


# -- quasinormality --------------------------------------------------------------


@dataclass
class Chq2Verdict:
    commutation: bool
    measure_equality: bool
    absolute_continuity: bool
    commutator_residual: float = 0.0
    projection_residual: float = 0.0
    witness: object = None

    @property
    def agree(self) -> bool:
        return self.commutation == self.measure_equality == self.absolute_continuity


def quasinormal_residuals(m: MatrixOperator, subspace=None) -> tuple[float, float]:
    """``||(U|A| - |A|U) W||`` and ``max_k ||(U E_k - E_k U) W||``."""
    W = m.subspace_basis(subspace)
    comm = _opnorm((m.U @ m.modulus - m.modulus @ m.U) @ W)
    proj = max((_opnorm((m.U @ E - E @ m.U) @ W) for E in m.projections), default=0.0)
    return comm, proj


def check_quasinormal(m: MatrixOperator, subspace=None) -> bool:
    """Polar-factor commutation ``U|A| = |A|U`` (on the subspace)."""
    comm, _ = quasinormal_residuals(m, subspace)
    return comm <= m.tol.verdict * m.scale


def chq2_conditions(m: MatrixOperator, rng, n_random: int = 100, subspace=None) -> Chq2Verdict:
    """Evaluate the three equivalent quasinormality conditions independently."""
    comm, proj = quasinormal_residuals(m, subspace)
    commutes = comm <= m.tol.verdict * m.scale
    equal, ac, witness = True, True, None
    for f in probe_vectors(m, rng, n_random, subspace):
        img, mod = measure_pair(m, f)
        tol = m.tol.verdict * m.scale**2 * max(1.0, float(np.vdot(f, f).real))
        if equal and not img.equals(mod, tol=tol):
            equal = False
            witness = f
        if ac and not _ac(img, mod):
            ac = False
            witness = f
        if not equal and not ac:
            break
    return Chq2Verdict(commutes, equal, ac, comm, proj, witness)


def _ac(mu: AtomicMeasure, nu: AtomicMeasure) -> bool:
    keys = set(nu.masses)
    return all(k in keys for k in mu.masses)


# -- weak quasinormality -----------------------------------------------------------


def _atom_blocks(m: MatrixOperator, W, E):
    N = W.conj().T @ m.modulus @ E @ m.modulus @ W
    M = W.conj().T @ m.A.conj().T @ E @ m.A @ W
    return (N + N.conj().T) / 2, (M + M.conj().T) / 2


def oracle_c_optimal_with_atom(m: MatrixOperator, subspace=None):
    """``(c, t)`` where ``t`` is the atom attaining the sup."""
    W = m.subspace_basis(subspace)
    s2 = m.scale**2
    best, where = 0.0, None
    for t, E in zip(m.atoms, m.projections):
        if t == 0.0:
            continue
        N, M = _atom_blocks(m, W, E)
        mu, X = np.linalg.eigh(M)
        null = mu <= m.tol.lin * s2
        for j in np.flatnonzero(null):
            x = X[:, j]
            if np.vdot(x, N @ x).real > m.tol.verdict * s2:
                return INF, t
        Xr = X[:, ~null]
        if Xr.shape[1] == 0:
            continue
        D = 1.0 / np.sqrt(mu[~null])
        K = (Xr.conj().T @ N @ Xr) * D[:, None] * D[None, :]
        c = float(np.linalg.eigvalsh((K + K.conj().T) / 2)[-1])
        if c > best:
            best, where = c, t
    return best, where


def oracle_c_optimal(m: MatrixOperator, subspace=None) -> float:
    """Least ``c`` with ``<E(s)|A|f,|A|f> <= c <E(s)Af,Af>`` for all ``s`` and ``f``.

    Per atom ``t_k`` this is the largest generalized eigenvalue of the pencil
    ``(|A| E_k |A|, A* E_k A)``; it is infinite when the kernel of the second
    form is not inside the kernel of the first.
    """
    return oracle_c_optimal_with_atom(m, subspace)[0]


def _pinv(M, cutoff):
    Wl, sv, Vh = np.linalg.svd(M, full_matrices=False)
    keep = sv > cutoff
    return (Vh[keep].conj().T / sv[keep]) @ Wl[:, keep].conj().T


@dataclass
class TDiagnostics:
    c: float
    norm_T: float
    ta_residual: float
    commutation_residual: float
    norm_gap: float
    range_residual: float
    polar_residual: float
    passed: bool = False
    details: dict = field(default_factory=dict)


def build_T(m: MatrixOperator, subspace=None):
    """The intertwiner ``T`` with ``T A = |A|`` commuting with each ``E_k``.

    On ``ran(E_k A)`` it sends ``E_k A f`` to ``E_k |A| f``; it vanishes on
    the orthogonal complement of the sum of those ranges.  Returns
    ``(T, diagnostics)``, or ``(None, diagnostics)`` when the optimal
    constant is infinite.
    """
    c = oracle_c_optimal(m, subspace)
    W = m.subspace_basis(subspace)
    if c == INF:
        diag = TDiagnostics(INF, INF, INF, INF, INF, INF, INF, passed=False)
        diag.details["reason"] = "optimal constant is infinite"
        return None, diag
    cutoff = m.tol.lin * m.scale
    T = np.zeros_like(m.A)
    for t, E in zip(m.atoms, m.projections):
        if t == 0.0:
            continue
        B = E @ m.A @ W
        C = E @ m.modulus @ W
        T = T + C @ _pinv(B, cutoff)
    AW = m.A @ W
    ta = _opnorm(T @ AW - m.modulus @ W)
    comm = max((_opnorm(T @ E - E @ T) for E in m.projections), default=0.0)
    norm_T = _opnorm(T)
    gap = abs(norm_T - float(np.sqrt(c)))
    P_mod = sum((E for t, E in zip(m.atoms, m.projections) if t > 0), np.zeros_like(m.A))
    rng_res = _opnorm(T - P_mod @ T)
    if subspace is None:
        P = m.range_projection(m.A)
        polar = _opnorm(m.U - P @ T.conj().T)
    else:
        P0 = m.range_projection(AW)
        polar = _opnorm(P0 @ T.conj().T @ m.modulus @ W - AW)
    diag = TDiagnostics(c, norm_T, ta, comm, gap, rng_res, polar)
    diag.passed = bool(
        ta <= 1e-9 * m.scale
        and comm <= 1e-9 * m.scale
        and gap <= 1e-6
        and rng_res <= 1e-9 * m.scale
        and polar <= 1e-9 * m.scale
    )
    return T, diag


# -- contractions ----------------------------------------------------------------------


def izonp_counterexample_check(B: complex = 1.0, D: complex = 1.0):
    """The 2x2 matrix ``[[1/sqrt2, B], [1/sqrt2, D]]``.

    Isometric on the first axis, yet ``T*T`` moves that axis when
    ``B + D != 0``, so ``T`` cannot be a contraction.  Returns ``None`` when
    ``B + D == 0`` (nothing to show), else the conjunction of the three facts.
    """
    if B + D == 0:
        return None
    a = 1 / np.sqrt(2)
    T = np.array([[a, B], [a, D]], dtype=complex)
    e1 = np.array([1, 0], dtype=complex)
    isometric = abs(np.linalg.norm(T @ e1) - 1) <= 1e-12
    moved = abs((T.conj().T @ T @ e1)[1]) > 1e-12
    not_contraction = _opnorm(T) > 1
    return bool(isometric and moved and not_contraction)


def _haar_unitary(rng, n):
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_partial_contraction(rng, n: int, k: int):
    """``(T, K)``: a contraction ``T`` isometric on the span of the columns of ``K``."""
    Y = _haar_unitary(rng, n)
    Z = _haar_unitary(rng, n)
    s = np.concatenate([np.ones(k), rng.uniform(0, 1, n - k)])
    T = (Z * s) @ Y.conj().T
    return T, Y[:, :k]


def izonp_residual(T, K) -> float:
    """``max ||T*T k - k||`` over the orthonormal columns ``k`` of ``K``."""
    return _opnorm(T.conj().T @ T @ K - K)


# -- random matrices -------------------------------------------------------------------


def random_dense(rng, n: int):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_quasinormal(rng, n: int):
    """``Q diag(t_i V_i, 0) Q*`` with unitary blocks ``V_i``: commutes with its modulus."""
    Q = _haar_unitary(rng, n)
    dims = []
    left = n
    while left:
        d = int(rng.integers(1, min(3, left) + 1))
        dims.append(d)
        left -= d
    blocks = []
    for i, d in enumerate(dims):
        t = 0.0 if (i == 0 and rng.random() < 0.5) else float(rng.uniform(0.5, 3.0)) + i
        blocks.append(t * _haar_unitary(rng, d))
    M = np.zeros((n, n), dtype=complex)
    at = 0
    for b in blocks:
        d = b.shape[0]
        M[at : at + d, at : at + d] = b
        at += d
    return Q @ M @ Q.conj().T


# -- transported spectral measures --------------------------------------------------


@dataclass
class GeneralizedReport:
    intertwines_projections: bool  # U G_s = F_s U
    intertwines_functions: bool  # U phi(|A|) = psi(|A|) U
    commutes_with_A: bool  # F_s A = A G_s
    measure_equality: bool
    measure_inequality: bool  # modulus measure <= c * image measure
    absolute_continuity: bool  # image measure << modulus measure
    residuals: dict = field(default_factory=dict)

    @property
    def operator_conditions_agree(self) -> bool:
        return (
            self.intertwines_projections == self.intertwines_functions == self.commutes_with_A
        )

    @property
    def all_agree(self) -> bool:
        return self.operator_conditions_agree and (
            self.commutes_with_A
            == self.measure_equality
            == self.measure_inequality
            == self.absolute_continuity
        )


def _transport(m: MatrixOperator, phi, psi):
    """Projections ``F_s`` (through ``psi``) and ``G_s`` (through ``phi``) on common levels ``s``."""
    pv = [_phi_float(phi, t) for t in m.atoms]
    sv = [_phi_float(psi, t) for t in m.atoms]
    levels: list[float] = []

    def level(x):
        for i, s in enumerate(levels):
            if abs(s - x) <= m.tol.cluster * max(1.0, abs(x)):
                return i
        levels.append(x)
        return len(levels) - 1

    G_idx = [level(x) for x in pv]
    F_idx = [level(x) for x in sv]
    zero = np.zeros_like(m.A)
    F = [zero.copy() for _ in levels]
    G = [zero.copy() for _ in levels]
    for k, E in enumerate(m.projections):
        F[F_idx[k]] += E
        G[G_idx[k]] += E
    return levels, F, G


def check_generalized(
    m: MatrixOperator,
    phi: FunctionOnAtoms = IDENTITY,
    psi: FunctionOnAtoms = IDENTITY,
    rng=None,
    n_random: int = 100,
    subspace=None,
    c: float = 1.0,
) -> GeneralizedReport:
    """Intertwining of ``U`` and ``A`` with the spectral measure transported by ``phi``, ``psi``.

    ``F_s`` is the spectral projection of ``|A|`` on ``psi^{-1}(s)`` and
    ``G_s`` the one on ``phi^{-1}(s)``.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    W = m.subspace_basis(subspace)
    levels, F, G = _transport(m, phi, psi)
    tol = m.tol.verdict * m.scale
    res_a = max((_opnorm((m.U @ g - f @ m.U) @ W) for f, g in zip(F, G)), default=0.0)
    res_b = _opnorm(
        (m.U @ m.function_of_modulus(phi) - m.function_of_modulus(psi) @ m.U) @ W
    ) if m.atoms else 0.0
    res_c = max((_opnorm((f @ m.A - m.A @ g) @ W) for f, g in zip(F, G)), default=0.0)

    equal = ineq = ac = True
    for x in probe_vectors(m, rng, n_random, subspace):
        Ax, Mx = m.A @ x, m.modulus @ x
        img = np.array([np.linalg.norm(f @ Ax) ** 2 for f in F])
        mod = np.array([np.linalg.norm(g @ Mx) ** 2 for g in G])
        scale = m.scale**2 * max(1.0, float(np.vdot(x, x).real))
        mtol = m.tol.verdict * scale
        if np.any(np.abs(img - mod) > mtol):
            equal = False
        if np.any(mod > c * img + mtol):
            ineq = False
        zero_tol = m.tol.lin * scale
        if np.any((img > zero_tol) & (mod <= zero_tol)):
            ac = False
    return GeneralizedReport(
        intertwines_projections=res_a <= tol,
        intertwines_functions=res_b <= tol,
        commutes_with_A=res_c <= tol,
        measure_equality=equal,
        measure_inequality=ineq,
        absolute_continuity=ac,
        residuals={"a": res_a, "b": res_b, "c": res_c, "levels": len(levels)},
    )
