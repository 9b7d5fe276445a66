//! Interactive play sessions and the local HTTP service.

pub mod http;
pub mod session;

pub use http::{analysis, router, serve, AppState, API_VERSION};
pub use session::{Phase, Session, SessionError};
