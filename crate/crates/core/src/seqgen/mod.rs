//! Explicit test-sequence generators and growth diagnostics.

mod abelian;
mod ball;
mod combine;
mod family;
mod schedule;
mod small_cancellation;

pub use abelian::{discriminate_box, AbelianSequence};
pub use ball::{ball_words, discriminate_ball, growth_ratio, BallResult};
pub use combine::{asymmetric_combine, Combined};
pub use family::{ConstantFamily, IdentityFamily, MorphismFamily, Reindexed};
pub use schedule::{twist_schedule, ScheduleEntry, TwistSchedule};
pub use small_cancellation::{
    shortlex_transversal, small_cancellation_bullets, small_cancellation_family, SmallCancellationFamily,
};
