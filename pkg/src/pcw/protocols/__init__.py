from .aag import AagParams, AagTranscript, aag_run
from .elgamal import ElGamalTranscript, PowerElGamalTranscript, elgamal_csp, elgamal_power
from .kolee import KoLeeTranscript, kolee_run
from .sharing import (
    ShareBundle,
    ss_deal_nn,
    ss_deal_tn,
    ss_reconstruct_nn,
    ss_reconstruct_tn,
)
from .signature import Signature, SignatureKeypair, sig_keygen, sig_sign, sig_verify
from .twisted import TwistedKey, twisted_auth_session, twisted_keygen

__all__ = [
    "AagParams",
    "AagTranscript",
    "aag_run",
    "ElGamalTranscript",
    "PowerElGamalTranscript",
    "elgamal_csp",
    "elgamal_power",
    "KoLeeTranscript",
    "kolee_run",
    "ShareBundle",
    "ss_deal_nn",
    "ss_deal_tn",
    "ss_reconstruct_nn",
    "ss_reconstruct_tn",
    "Signature",
    "SignatureKeypair",
    "sig_keygen",
    "sig_sign",
    "sig_verify",
    "TwistedKey",
    "twisted_auth_session",
    "twisted_keygen",
]
