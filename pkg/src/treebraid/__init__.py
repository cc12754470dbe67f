"""Integral cohomology rings of tree braid groups."""

from .cubes import BudgetExceeded, NotSufficient, integral_cohomology
from .interaction import (Interaction, InteractionVertex, classify_interaction, f_vector,
                          is_face, is_flag, knt_faces)
from .morse import CriticalCell, MorseModel, enumerate_critical
from .oracle import Oracle
from .ring import (ChangedGenerator, RingElement, evaluate_product, exterior_face_ring_certificate,
                   factorize_basis, multiply_strong, raag_presentation)
from .tree import RootedPlaneTree, TreeError, build_tree, reembed_binary_core, subdivide_for

__all__ = [
    "BudgetExceeded", "ChangedGenerator", "CriticalCell", "Interaction", "InteractionVertex",
    "MorseModel", "NotSufficient", "Oracle", "RingElement", "RootedPlaneTree", "TreeError",
    "build_tree", "classify_interaction", "enumerate_critical", "evaluate_product",
    "exterior_face_ring_certificate", "f_vector", "factorize_basis", "integral_cohomology",
    "is_face", "is_flag", "knt_faces", "multiply_strong", "raag_presentation",
    "reembed_binary_core", "subdivide_for",
]
