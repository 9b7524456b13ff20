"""Exact fields, dense univariate and sparse multivariate polynomials."""
from .fields import (FieldElement, FieldEmbedding, FieldError, FieldSpec, find_irreducible,
                     finite_field, get_field)
from .mpoly import BinaryForm, MultiPoly, binary_discriminant, hessian_determinant, resultant_in
from .upoly import (UniPoly, discriminant, resultant, roots_with_multiplicity,
                    squarefree_decomposition)
