use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use finder_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

/// Error body returned by every endpoint.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl ApiError {
    pub fn session_not_found(id: &str) -> Self {
        Self {
            status: StatusCode::NOT_FOUND,
            code: "unknown_session",
            message: format!("unknown session `{id}`"),
            details: None,
        }
    }

    pub fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            code,
            message: message.into(),
            details: None,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            code: "internal_error",
            message: message.into(),
            details: None,
        }
    }
}

fn status_of(e: &Error) -> StatusCode {
    match e {
        Error::UnknownPaper(_) | Error::UnknownAuthor(_) => StatusCode::NOT_FOUND,
        Error::EmptyQuery
        | Error::NoSeeds
        | Error::InvalidParams(_)
        | Error::Schema(_)
        | Error::DanglingId { .. }
        | Error::Ingest { .. } => StatusCode::BAD_REQUEST,
        Error::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        Error::NotVisible(_)
        | Error::NotSelected(_)
        | Error::SeedDeselect(_)
        | Error::NotSeed(_)
        | Error::AlreadySelected(_)
        | Error::NotReviewer(_)
        | Error::NotCandidate(_)
        | Error::ConflictsWithSubmitters { .. }
        | Error::ConflictsWithReviewers { .. }
        | Error::SelectionConflict(_)
        | Error::NotSubstitute { .. }
        | Error::NoReviewers => StatusCode::CONFLICT,
    }
}

fn details_of(e: &Error) -> Option<Value> {
    match e {
        Error::ConflictsWithSubmitters { reviewer, with }
        | Error::ConflictsWithReviewers { reviewer, with } => {
            Some(json!({ "reviewer": reviewer, "with": with }))
        }
        Error::SelectionConflict(pairs) => Some(json!({ "pairs": pairs })),
        Error::NotSubstitute {
            reviewer,
            substitute,
        } => Some(json!({ "reviewer": reviewer, "substitute": substitute })),
        Error::DanglingId { kind, id } => Some(json!({ "kind": kind, "id": id })),
        Error::Ingest { line, .. } => Some(json!({ "line": line })),
        _ => None,
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        Self {
            status: status_of(&e),
            code: e.code(),
            message: e.to_string(),
            details: details_of(&e),
        }
    }
}

impl From<std::io::Error> for ApiError {
    fn from(e: std::io::Error) -> Self {
        ApiError::from(Error::Io(e))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}
