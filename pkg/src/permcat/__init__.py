"""Computer algebra for finite multicategories and permutative categories.

The package makes the following constructions executable over finite inputs:

- one-line permutations, maps of finite ordinals, block permutations and
  the index-permutation constructions that drive all composition formulas
  (:mod:`permcat.perms`);
- arity-truncated multicategories, multifunctors and multinatural
  transformations with exhaustive axiom validation (:mod:`permcat.multicat`);
- finite permutative categories and the full n-linear functor calculus
  (:mod:`permcat.permcats`);
- the free permutative category on a multicategory (:mod:`permcat.free`);
- the endomorphism multicategory of a permutative category
  (:mod:`permcat.endo`);
- the decomposable fragment of the tensor product of multicategories and
  the multilinear comparison functor into the free construction
  (:mod:`permcat.tensor`);
- the unit/counit comparison transformations and the marking construction
  (:mod:`permcat.transforms`);
- validators for ring, bipermutative, braided ring, n-fold monoidal and
  E_n-monoidal categories (:mod:`permcat.rings`);
- JSON document formats and a command line interface
  (:mod:`permcat.documents`, :mod:`permcat.cli`).
"""

__version__ = "0.1.0"
