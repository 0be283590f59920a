"""One-stop construction of the full algebraic model for a minuscule pair
(algebra, node): Chevalley basis, adjoint + minuscule matrices, Killing form,
symplectic pairing, circ product and the quartic constant."""

from dataclasses import dataclass
from fractions import Fraction

from .chevalley import chevalley_constants
from .liecore import cartan_matrix, generate_roots
from .repbuild import (
    CircProduct,
    InvariantPairing,
    KillingForm,
    MatrixRep,
    build_adjoint,
    build_minuscule,
    circ_product,
    derive_mu,
    invariant_symplectic,
)

LAMBDA = Fraction(1)  # pairing normalization; mu absorbs the remaining freedom


@dataclass
class Workbench:
    algebra: str
    node: int
    rs: object
    cb: object
    adjoint: MatrixRep
    killing: KillingForm
    rep: MatrixRep
    pairing: InvariantPairing
    circ: CircProduct
    mu: Fraction

    @property
    def dim_g(self):
        return self.cb.dim

    @property
    def dim_v(self):
        return self.rep.dim

    def rho_of(self, elem, vec):
        return self.rep.apply_element(elem, vec)


def build_workbench(algebra="E7", node=None, mu_seed=0, mu_samples=100):
    """Construct all exact data for the minuscule representation at `node`
    (0-based; defaults to the last node, which is the 56 for E7)."""
    rs = generate_roots(cartan_matrix(algebra))
    if node is None:
        node = rs.rank - 1
    cb = chevalley_constants(rs)
    adjoint, killing = build_adjoint(cb)
    rep = build_minuscule(cb, node)
    pairing = invariant_symplectic(rep)
    circ = circ_product(rep, killing, pairing, lam=LAMBDA)
    mu = derive_mu(killing, pairing, circ, seed=mu_seed, samples=mu_samples)
    return Workbench(
        algebra=algebra,
        node=node,
        rs=rs,
        cb=cb,
        adjoint=adjoint,
        killing=killing,
        rep=rep,
        pairing=pairing,
        circ=circ,
        mu=mu,
    )
