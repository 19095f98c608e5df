'''
This module contains primitive types that can be used
in constants and types modules.
'''


# native imports
from typing import Annotated
from typing import TypeAlias


probability: TypeAlias = Annotated[float, "real value in [0, 1]"]
'''real value in [0, 1]'''

tolerance: TypeAlias = Annotated[float, "absolute numeric tolerance"]
'''absolute numeric tolerance'''

state_index: TypeAlias = Annotated[int, "index of a discrete variable state"]
'''index of a discrete variable state'''
