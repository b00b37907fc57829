from .field import field_based_attack
from .lba import AttackResult, LbaConfig, lba

__all__ = ["AttackResult", "LbaConfig", "field_based_attack", "lba"]
