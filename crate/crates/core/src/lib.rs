//! Single-photon scattering for quantum emitters coupled to waveguides,
//! cavities and coupled-resonator lattices.
//!
//! Every backend produces complex transmission and reflection amplitudes on
//! a [`FrequencyGrid`]. Cascades of scatterers are composed with transfer
//! matrices, packet-level figures of merit are computed in [`packet`], and
//! [`oracle`] holds independent brute-force checks of the closed forms.
//!
//! Units are whatever the caller picks for angular frequency (ħ = 1).

pub mod cascade;
pub mod cavity;
pub mod continuum;
pub mod crw;
pub mod error;
pub mod model;
pub mod oracle;
pub mod packet;
pub mod quadrature;
pub mod search;

pub use error::{Error, Result};
pub use model::{
    Amplitude, CavityParams, CrwParams, EmitterWaveguideParams, Frame, FrequencyGrid,
    Probabilities, SpectralResponse, Validate, Violation,
};
pub use packet::{SwitchReport, WavePacket};
