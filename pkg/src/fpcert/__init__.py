"""Invariants, residual order claims, and replayable certificates for
finitely presented groups.

The pipeline: words and presentations at the bottom, abelianization and
coset enumeration as the computational engines, order claims with witness
tables as the evidence layer, relator profiles to organize the claims, and
certificate builders on top.  A built-in corpus supplies worked instances
of every route.
"""

from .abelian import (
    SNFResult,
    abelian_invariants,
    det,
    p_rank,
    relation_matrix,
    smith_normal_form,
)
from .certify import (
    Certificate,
    CertificateError,
    GateError,
    GradientSample,
    GradientScan,
    SuperReport,
    SuperSample,
    canonical_json,
    certificates_to_json,
    certify_p_large,
    certify_pdef_one,
    certify_rg_positive,
    check_supermultiplicativity,
    gradient_scan,
    load_certificates,
    verify_certificate,
)
from .claims import (
    AT_LEAST,
    EXACT,
    KINDS,
    STRICTLY_LESS,
    TARGET_P_ROOT,
    TARGET_ROOT,
    TARGETS,
    Asserted,
    ClaimBinding,
    ClaimError,
    OrderClaim,
    Witness,
    binding_from_json,
    binding_to_json,
    claim_is_proven,
    claim_to_json,
    evidence_to_json,
    load_claims,
    verify_claim,
)
from .corpus import (
    DEFAULT_INSTANCES,
    FAMILIES,
    CorpusEntry,
    CorpusError,
    moldavanskii_word,
    wise_w,
)
from .corpus import get as corpus_entry
from .enumeration import (
    CATALOGUE_MAX_INDEX,
    CatalogueLimitError,
    CosetTable,
    EnumerationError,
    Inconclusive,
    SubgroupRecord,
    abelian_quotient_table,
    low_index,
    order_bound,
    todd_coxeter,
    trivial_table,
)
from .presentations import (
    Presentation,
    PresentationError,
    deficiency,
    format_fraction,
    format_presentation,
    load_presentation,
    p_deficiency,
    parse_presentation,
    presentation,
    residual_deficiency,
)
from .profiles import (
    Classification,
    Inflation,
    ProfileError,
    RelatorProfile,
    claims_summary,
    classify,
    derive_P,
    inflate,
    profile_relators,
)
from .rewriting import MODES, SchreierData, schreier_data, simplify, subgroup_presentation
from .words import (
    Alphabet,
    PValuation,
    RootDecomposition,
    Word,
    WordError,
    commutator,
    cyclic_reduce,
    format_word,
    is_prime,
    p_valuation,
    parse_word,
    primitive_root,
    require_prime,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # words
    "Alphabet",
    "Word",
    "WordError",
    "RootDecomposition",
    "PValuation",
    "commutator",
    "cyclic_reduce",
    "primitive_root",
    "p_valuation",
    "is_prime",
    "require_prime",
    "parse_word",
    "format_word",
    # presentations
    "Presentation",
    "PresentationError",
    "presentation",
    "parse_presentation",
    "format_presentation",
    "load_presentation",
    "deficiency",
    "p_deficiency",
    "residual_deficiency",
    "format_fraction",
    # abelian
    "SNFResult",
    "smith_normal_form",
    "relation_matrix",
    "abelian_invariants",
    "p_rank",
    "det",
    # claims
    "EXACT",
    "AT_LEAST",
    "STRICTLY_LESS",
    "KINDS",
    "TARGET_ROOT",
    "TARGET_P_ROOT",
    "TARGETS",
    "Witness",
    "Asserted",
    "OrderClaim",
    "ClaimBinding",
    "ClaimError",
    "claim_is_proven",
    "verify_claim",
    "binding_from_json",
    "binding_to_json",
    "claim_to_json",
    "evidence_to_json",
    "load_claims",
    # enumeration
    "CosetTable",
    "SubgroupRecord",
    "Inconclusive",
    "EnumerationError",
    "CatalogueLimitError",
    "CATALOGUE_MAX_INDEX",
    "trivial_table",
    "abelian_quotient_table",
    "todd_coxeter",
    "low_index",
    "order_bound",
    # rewriting
    "MODES",
    "SchreierData",
    "schreier_data",
    "subgroup_presentation",
    "simplify",
    # profiles
    "RelatorProfile",
    "Classification",
    "Inflation",
    "ProfileError",
    "profile_relators",
    "classify",
    "derive_P",
    "inflate",
    "claims_summary",
    # certify
    "Certificate",
    "CertificateError",
    "GateError",
    "GradientSample",
    "GradientScan",
    "SuperSample",
    "SuperReport",
    "canonical_json",
    "certificates_to_json",
    "certify_rg_positive",
    "certify_p_large",
    "certify_pdef_one",
    "verify_certificate",
    "load_certificates",
    "gradient_scan",
    "check_supermultiplicativity",
    # corpus
    "CorpusEntry",
    "CorpusError",
    "FAMILIES",
    "DEFAULT_INSTANCES",
    "corpus_entry",
    "moldavanskii_word",
    "wise_w",
]
