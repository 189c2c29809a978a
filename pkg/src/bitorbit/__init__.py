"""Iterated block differences of 01-streams, generalized Pascal triangles mod 2,
periodicity witnesses, and orbit renderers."""

from bitorbit.bitword import BitWord, first_disagreement, invert, shift, xor
from bitorbit.difference import (block_diff, diff_pow2, iterate_diff_fast,
                                 iterate_diff_naive, triangle_apply)
from bitorbit.errors import (BitOrbitError, ContradictionError, ExprSyntaxError,
                             FormatError, InsufficientPrefixError, OutOfRangeError,
                             ProductivityError, ResourceLimitError)
from bitorbit.orbit import OrbitMatrix, build_orbit
from bitorbit.parser import format_expr, parse_expr
from bitorbit.pascal import ParityRow, PascalRow, parity_row, pascal_row_exact, path_count_oracle
from bitorbit.periodicity import (OrbitPeriodWitness, PeriodCertificate, certificate_for_evp,
                                  check_strong_preservation, detect_period, distinct_rows,
                                  orbit_witness_from_period, period_from_orbit_witness,
                                  point_orbit_facts, recurrence_profile)
from bitorbit.render import render_arrowhead_svg, render_orbit_pbm, turtle_path
from bitorbit.streams import (Cons, Diff, EvP, Inv, Named, Point, Ref, Subst, Tail, Xor, ZipNM,
                              demand_of, fixpoint_materialize, gen_named, materialize)
from bitorbit.transducer import Transducer, delta_fst, run

__version__ = "0.1.0"
