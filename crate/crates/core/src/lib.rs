pub mod cyclotomic;
pub mod exact;
pub mod numeric;
pub mod perm;
pub mod radical;
pub mod resolvent;
pub mod symmetric;
