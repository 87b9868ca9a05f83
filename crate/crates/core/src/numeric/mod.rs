pub mod format;
pub mod quad;
pub mod search;
pub mod special;
pub mod sum;
