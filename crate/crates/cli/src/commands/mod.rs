pub mod classify;
pub mod evaluate;
pub mod extract;
pub mod learn;
pub mod synth;
