from .rule_set import ACCEPT, Accept, Action, PosMatcher, RuleNode, RuleSet, VerbExpansion, lookup, match_pos, pos_keys
from .loader import dump_rules, load_rules, load_rules_file, rules_from_dict, rules_to_dict
