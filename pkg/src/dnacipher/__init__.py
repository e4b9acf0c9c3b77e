"""RGB image cipher built on DNA base encoding and logistic-map keystreams,
plus the one-known-plaintext equivalent-key attack and sensitivity analyses.
"""

from .dna import (
    Base,
    RuleClass,
    complement,
    decode_base,
    dna_add,
    dna_sub,
    encode_digit,
    rule_class,
    rule_from_pair,
)
from .keystream import (
    Keystreams,
    SecretKey,
    KeystreamDegenerationError,
    format_key_text,
    keystreams,
    logistic_orbit,
    parse_key_text,
    random_key,
    t_sequence,
    z_sequence,
)
from .cipher import (
    DigitImage,
    DnaTriples,
    RgbImage,
    addition_step,
    complement_step,
    decode_image,
    decrypt,
    digits_to_image,
    encode_image,
    encrypt,
    image_to_digits,
    inverse_addition_step,
    mask_step,
)
from .attack import (
    AttackReport,
    EquivalentKey,
    FailureStage,
    MissingWitnessError,
    composed_rule,
    eqkey_from_bytes,
    eqkey_to_bytes,
    equivalent_decrypt,
    k1_candidates,
    recover_equivalent_key,
    recover_k1,
    recover_k2_class,
    recover_map_c,
)
from .analysis import (
    AvalancheReport,
    KeyLeakReport,
    detect_structure_leak,
    format_avalanche_report,
    format_key_leak_report,
    measure_avalanche,
    measure_wrong_key_leak,
)
from .ppm import PpmFormatError, read_ppm, write_ppm

__version__ = "0.1.0"
