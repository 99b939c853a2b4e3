"""Reversible adder, subtractor and five-control-line ALU as gate netlists.

Circuits are built from the controlled-NOT family, simulated on classical
basis states and checked exhaustively against arithmetic oracles.
"""
from .alu import (AluOp, ControlVector, build_alu, build_nop, conformance_report,
                  decode, discover_map, encode_op, semantics)
from .arith import build_adder, build_subtractor, oracle_add, oracle_sub
from .errors import BudgetExceeded, ParseError, StructuralError
from .gates import BitState, Control, Gate, apply_gate, ccx, cx, gate_inverse, mcx, neg, x
from .netlist import (Circuit, CostReport, Register, compose, cost_report, emit_text,
                      inverse, parse_text)
from .simulator import (Permutation, Verdict, check_ancilla_clean, check_bijective,
                        check_equivalent, extract_permutation, run)

__version__ = "0.1.0"
