"""Exact symbolic Clifford algebras Cl(p,q) with arbitrary bilinear
forms, plus three interchangeable high-dimensional product routes:
graded tensor products, ungraded (volume-scaled) tensor products, and
Clifford-valued 2x2 matrix representations."""

from .algebra import (
    AlgebraContext,
    Multivector,
    cmul,
    grade_involution,
    grade_project,
    left_contract,
    permute_generators,
    reversion,
    signature_form,
    symbolic_form,
    wedge,
    zero_form,
)
from .classify import AlgebraClass, classify
from .climatrix import (
    CM,
    BasisTable,
    CliMatrix,
    build_basis_table,
    cm_matmul,
    spinor_basis_matrices,
    evalm,
    generator_matrices,
    iterate_rep,
    load_table,
    matrix_involutions,
    phi,
    save_table,
)
from .errors import (
    CliffError,
    ContextMismatch,
    ParseError,
    PreconditionError,
    TableError,
    VerificationError,
)
from .routes import ROUTES, make_product
from .scalars import Poly
from .tensor import (
    SplitSpec,
    TensorElement,
    bas2gtbas,
    bas2tbas,
    block_diag_context,
    cmul_gtensor,
    cmul_tensor,
    gswitch,
    gtbas2bas,
    gtensor_split,
    periodicity_split,
    switch,
    t_grade_involution,
    t_reversion,
    tbas2bas,
    tensor,
    volume_split,
)
from .textio import (
    blade_token,
    evaluate,
    multivector_text,
    parse_expr,
    parse_multivector,
    tensor_text,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraClass",
    "AlgebraContext",
    "BasisTable",
    "CM",
    "CliMatrix",
    "CliffError",
    "ContextMismatch",
    "Multivector",
    "ParseError",
    "Poly",
    "PreconditionError",
    "ROUTES",
    "SplitSpec",
    "TableError",
    "TensorElement",
    "VerificationError",
    "bas2gtbas",
    "bas2tbas",
    "blade_token",
    "block_diag_context",
    "build_basis_table",
    "classify",
    "cm_matmul",
    "cmul",
    "cmul_gtensor",
    "cmul_tensor",
    "spinor_basis_matrices",
    "evalm",
    "evaluate",
    "generator_matrices",
    "grade_involution",
    "grade_project",
    "gswitch",
    "gtbas2bas",
    "gtensor_split",
    "iterate_rep",
    "left_contract",
    "load_table",
    "make_product",
    "matrix_involutions",
    "multivector_text",
    "parse_expr",
    "parse_multivector",
    "periodicity_split",
    "permute_generators",
    "phi",
    "reversion",
    "save_table",
    "signature_form",
    "switch",
    "symbolic_form",
    "t_grade_involution",
    "t_reversion",
    "tbas2bas",
    "tensor",
    "tensor_text",
    "volume_split",
    "wedge",
    "zero_form",
]
