"""Finite magmas, equational varieties and forbidden-substructure
characterizations checked by exhaustive bounded search."""

from .catalog import (Characterization, get_model, get_variety, registry_characterizations,
                      registry_models, registry_varieties)
from .charverify import (DiscoveryReport, VerificationReport, check_minimality,
                         discover_family, run_theorem1, verify_characterization)
from .magma import (EmbeddingWitness, Magma, avoids, canonical_form, dual_magma, embeds,
                    format_magmas, generated_submagma, in_variety, is_isomorphic,
                    parse_magmas, restrict, satisfies)
from .modelgen import enumerate_models, find_counterexample
from .terms import (Identity, Variety, dual_identity, dual_term, eval_term, parse_identity,
                    parse_term)

__version__ = "0.1.0"
