"""Builtin models and file ingestion."""
from .groups import GROUP_NAMES, builtin_descriptor, builtin_group, direct_product, group_from_descriptor
from .io import export, export_text, from_dict, ingest, lie_from_dict, lie_to_dict
from .lie import builtin_lie, lie_names

__all__ = ["GROUP_NAMES", "builtin_descriptor", "builtin_group", "builtin_lie", "direct_product", "export",
           "export_text", "from_dict", "group_from_descriptor", "ingest", "lie_from_dict", "lie_names",
           "lie_to_dict"]
