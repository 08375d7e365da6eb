"""Semantic role vocabulary."""
import enum


class SemanticRole(enum.Enum):
    # Declaration order doubles as the decoder tie-break order.
    ObjectName = "ObjectName"
    ObjectStatus = "ObjectStatus"
    ActionName = "ActionName"
    ActionStatus = "ActionStatus"
    ActorName = "ActorName"
    ActorInstance = "ActorInstance"
    PassiveName = "PassiveName"
    PassiveInstance = "PassiveInstance"
    Other = "Other"

    def __str__(self):
        return self.value

    @property
    def is_type_level(self):
        """True for the roles attribute classification may assign directly (R')."""
        return self not in _NOT_TYPE_LEVEL

    @property
    def is_instance_level(self):
        return self in (SemanticRole.ActorInstance, SemanticRole.PassiveInstance)

    @classmethod
    def parse(cls, text):
        """Accepts ``ObjectName`` and the ``Object:name`` spelling, case-insensitively."""
        key = text.strip().replace(":", "").lower()
        for role in cls:
            if role.value.lower() == key:
                return role
        raise ValueError(f"unknown semantic role {text!r}")


_NOT_TYPE_LEVEL = frozenset(
    {SemanticRole.ActorInstance, SemanticRole.PassiveInstance, SemanticRole.Other}
)

#: The eight labeling roles, without Other.
ROLES = tuple(r for r in SemanticRole if r is not SemanticRole.Other)

#: Roles assignable by attribute classification, without Other.
TYPE_LEVEL_ROLES = tuple(r for r in ROLES if r.is_type_level)

NOUN_ROLES = (
    SemanticRole.ObjectName,
    SemanticRole.ActorName,
    SemanticRole.PassiveName,
    SemanticRole.Other,
)

INSTANCE_OF = {
    SemanticRole.ActorName: SemanticRole.ActorInstance,
    SemanticRole.PassiveName: SemanticRole.PassiveInstance,
}

TYPE_OF = {v: k for k, v in INSTANCE_OF.items()}
