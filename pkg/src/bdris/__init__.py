"""Channel models and RIS configuration for reciprocal and non-reciprocal
beyond-diagonal RIS in full-duplex links."""

from .channels import (ChannelSet, ScenarioConfig, build_channels, fd_channel_matrix, path_loss,
                       steering_vector)
from .metrics import BeamPatternSet, LinkMetrics, beam_patterns, normalized_strengths, rates
from .network import (DerivedScattering, ImpedanceBlocks, PortLayout, TerminationSpec, general_channel,
                      s_to_z, scattering_from_impedance_result1, simplified_channel_result1,
                      simplified_channel_result2, z_to_s)
from .optimizers import (ProcrustesDiag, ProjectionTargets, RisSolution, build_projection_targets,
                         nonreciprocal_design, procrustes_unitary, projection_diagnostics,
                         reciprocal_closed_form, reciprocal_design, strength_upper_bounds)
from .oracles import OracleReport, model_consistency_check, phase_grid_oracle, random_unitary_oracle
from .scenario import PRESETS, SweepResult, beam_study, emit_csv, emit_svg, parse_config, run_sweep

__version__ = "0.1.0"
