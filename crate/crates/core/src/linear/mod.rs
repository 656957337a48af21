//! `SL_n(Z)` and `SL_n(F_p)`: transvections, elementary factorizations and
//! certificates over the conjugacy class of `t_12(1)`.

mod int;
mod modp;

pub use int::{
    base_transvection, commutator_identity_check, conjugators_in_sl, elementary_factorize,
    matrix_as_t_conjugates, transvection, transvection_as_t_conjugates, transvection_conjugator,
    Elementary, IntMatrix,
};
pub use modp::{
    all_transvections, bfs_width_fp, field_transvection_factorize, is_prime, sl_order,
    FpWidthReport, ModMatrix,
};
