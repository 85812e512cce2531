from .validation_set import ValidationSet
from .validator import Validator, ValidatorObject
