pub mod bohm;
pub mod epr;
pub mod ks;
pub mod mermin;
pub mod partner;
pub mod report;
