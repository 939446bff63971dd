"""Exact prime-field engine for quiver representations, preprojective-algebra
modules, and the binary product on components of nilpotent varieties."""

from .errors import (
    GenericityError,
    NoMajorityError,
    NotDynkinError,
    QuiverStarError,
)
from .fieldops import DEFAULT_PRIME, DEFAULT_TRIALS, FieldCtx
from .quiver import (
    Quiver,
    builtin_quiver,
    euler_form,
    is_dynkin,
    load_quiver,
    opposite,
    positive_roots,
    sym_form,
)
from .qrep import (
    QRep,
    RootMultiset,
    decompose,
    dual_rep,
    ext1_q_dim,
    generic_rep,
    hom_q_dim,
    hom_q_space,
    indecomposable,
    rep_of_multiset,
)
from .coxeter import TauImage, projective_pi_module, reflect_minus, reflect_plus, tau, tau_minus
from .pimod import (
    Cocycle,
    ExtSpace,
    PiMod,
    build_extension,
    check_nilpotent,
    check_pi,
    dual_pimod,
    ext1_pi_dim_cb,
    ext_space,
    hom_pi_dim,
    hom_pi_space,
    is_rigid_component,
    is_rigid_module,
    kernel_of_surjection,
    orbitmap_coker_dim,
    sample_conormal,
)
from .taudata import (
    TauMod,
    ext1_pi_via_t,
    hom_pi_via_t,
    random_tau_module,
    split_by_tau_vanishing,
    star_criterion,
    t_map_matrix,
    tau_module,
)
from .starops import (
    StarResult,
    associativity_probe,
    cancellation_probe,
    crystal_e,
    crystal_f,
    dual_component,
    enumerate_components,
    oplus_component,
    star_product,
    strongly_commute,
    weakly_commute,
)

__version__ = "0.1.0"
