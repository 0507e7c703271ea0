pub mod lp;
pub mod qp;
pub mod scalar;
pub mod fiber;
