pub mod cli;
pub mod cxmat;
pub mod grouprep;
pub mod harmonic;
pub mod io;
pub mod maps;
pub mod positivity;
pub mod random;
pub mod semigroup;
