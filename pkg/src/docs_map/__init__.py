from .validate import (DEFAULT_MAP_PATH, FormulaMap, MapEntry, MapReport, load_map,
                       public_operations, validate_map)

__all__ = [
    "MapEntry",
    "FormulaMap",
    "MapReport",
    "load_map",
    "public_operations",
    "validate_map",
    "DEFAULT_MAP_PATH",
]
