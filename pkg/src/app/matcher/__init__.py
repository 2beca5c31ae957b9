from app.matcher.context_matcher import (
    Candidate,
    ContextMatcher,
    expand_verb_clause,
    extract_context,
    extract_descriptors,
    extract_value_modifiers,
    find_candidates,
)
from app.matcher.serializer import (
    envelope_to_dict,
    extraction_from_dict,
    extraction_to_dict,
    load_extractions,
    serialize_envelope,
    serialize_extraction,
)
