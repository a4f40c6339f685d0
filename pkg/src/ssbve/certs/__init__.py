"""Relaxation-gap certificates: Gram-matrix and lifted-LP constructions,
instance-property checks, and the gap-exponent calculator."""

from .calculator import GapExponents, hardness_gap_calculator
from .properties import check_instance_properties
from .report import CheckRow, VerifyReport
from .sa import (SaCertificate, build_sa_certificate, cover_cost,
                 sa_lift_value, sample_property_checks, verify_sa_certificate)
from .sdp import (SdpCertificate, biregularize, build_sdp_certificate,
                  cap_degrees, verify_sdp_certificate)

__all__ = [
    "GapExponents", "hardness_gap_calculator", "check_instance_properties",
    "CheckRow", "VerifyReport", "SaCertificate", "build_sa_certificate",
    "cover_cost", "sa_lift_value", "sample_property_checks",
    "verify_sa_certificate", "SdpCertificate", "biregularize",
    "build_sdp_certificate", "cap_degrees", "verify_sdp_certificate",
]
