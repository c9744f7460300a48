//! Blocks, defect groups and Brauer trees of finite group algebras in
//! characteristic p, and towers of finite quotients approximating profinite
//! groups.

pub mod acceptance;
pub mod algebra;
pub mod brauer;
pub mod ff;
pub mod groups;
pub mod tower;
