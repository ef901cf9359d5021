from .canonical import CanonicalForm, canonical_form
from .catalog import catalog, catalog_names, get_code, resolve_code
from .fileformat import format_code, load_code, parse_code, save_code
from .randcodes import random_code, random_trivial_code
from .stabilizer import (
    DecodeMap,
    StabilizerCode,
    decode_map,
    find_logicals,
    group_elements,
    in_group,
    is_trivial,
    make_code,
    untouched_qubits,
    validate,
)
