use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use finder_core::session::{SessionFile, SessionResearcherNetwork, Settings};
use finder_core::{
    links, paper_network_view, AuthorId, CorpusIndex, PaperId, PaperNetworkView, PaperRecord, Role,
    Session, SubstituteList,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::ApiError;
use crate::registry::SessionRegistry;

const DEFAULT_SEARCH_LIMIT: usize = 20;

#[derive(Clone)]
pub struct AppState {
    pub index: Arc<CorpusIndex>,
    pub sessions: Arc<SessionRegistry>,
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/papers/search", get(search_papers))
        .route("/papers/{pid}", get(get_paper))
        .route("/authors/search", get(search_authors))
        .route("/sessions", post(create_session))
        .route("/sessions/import", post(import_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/file", get(session_file))
        .route("/sessions/{id}/seeds", post(add_seeds))
        .route("/sessions/{id}/seeds/{pid}", delete(remove_seed))
        .route(
            "/sessions/{id}/selected-papers/{pid}",
            post(select_paper).delete(deselect_paper),
        )
        .route("/sessions/{id}/submitting-authors", put(set_submitting))
        .route(
            "/sessions/{id}/reviewers/{rid}",
            post(select_reviewer).delete(remove_reviewer),
        )
        .route(
            "/sessions/{id}/reviewers/{rid}/substitutes",
            get(substitutes),
        )
        .route("/sessions/{id}/reviewers/{rid}/swap", post(swap_reviewer))
        .route("/sessions/{id}/candidates", get(candidates))
        .route("/sessions/{id}/paper-network", get(paper_network))
        .route("/sessions/{id}/researcher-network", get(researcher_network))
        .route("/sessions/{id}/export", get(export))
        .route("/sessions/{id}/settings", put(update_settings))
        .with_state(state)
}

async fn health(State(st): State<AppState>) -> Json<serde_json::Value> {
    let stats = st.index.stats();
    Json(json!({
        "status": "ok",
        "papers": stats.papers,
        "authors": stats.authors,
        "citations": stats.citations,
    }))
}

#[derive(Deserialize)]
struct SearchQuery {
    #[serde(default)]
    q: String,
    limit: Option<usize>,
    session: Option<String>,
}

async fn search_papers(
    State(st): State<AppState>,
    Query(q): Query<SearchQuery>,
) -> Result<Response, ApiError> {
    let limit = q.limit.unwrap_or(DEFAULT_SEARCH_LIMIT);
    let hits = match q.session {
        Some(id) => st.sessions.read(&st.index, &id, |s| {
            Ok(st.index.search_titles(&q.q, limit, Some(s.network()))?)
        })?,
        None => st.index.search_titles(&q.q, limit, None)?,
    };
    Ok(Json(hits).into_response())
}

async fn search_authors(
    State(st): State<AppState>,
    Query(q): Query<SearchQuery>,
) -> Result<Response, ApiError> {
    let hits = st
        .index
        .search_authors(&q.q, q.limit.unwrap_or(DEFAULT_SEARCH_LIMIT))?;
    Ok(Json(hits).into_response())
}

#[derive(Serialize)]
struct PaperDetail<'a> {
    #[serde(flatten)]
    record: &'a PaperRecord,
    citation_count: usize,
    cited_by: Vec<&'a PaperId>,
    dblp_url: String,
}

async fn get_paper(
    State(st): State<AppState>,
    Path(pid): Path<String>,
) -> Result<Response, ApiError> {
    let id = PaperId::new(pid);
    let record = st.index.paper(&id)?;
    Ok(Json(PaperDetail {
        record,
        citation_count: st.index.citation_count(&id)?,
        cited_by: st.index.citing(&id).iter().collect(),
        dblp_url: links::paper_url(&record.title),
    })
    .into_response())
}

#[derive(Serialize)]
pub struct Person {
    pub author_id: AuthorId,
    pub name: String,
    pub role: Role,
    pub dblp_url: String,
}

/// Session state as returned by the API.
#[derive(Serialize)]
pub struct SessionView {
    pub session_id: String,
    pub seeds: Vec<PaperId>,
    pub selected_papers: Vec<PaperId>,
    pub visible_papers: usize,
    pub submitting_authors: Vec<Person>,
    pub reviewers: Vec<Person>,
    pub settings: Settings,
}

fn view(index: &CorpusIndex, s: &Session) -> SessionView {
    let roles = s.roles(index);
    let person = |id: &AuthorId| {
        let name = index.author_name(id).unwrap_or_default().to_owned();
        Person {
            author_id: id.clone(),
            role: roles.role(id),
            dblp_url: links::author_url(&name),
            name,
        }
    };
    SessionView {
        session_id: s.id().to_owned(),
        seeds: s.network().seeds().to_vec(),
        selected_papers: s.network().selected().iter().cloned().collect(),
        visible_papers: s.network().visible().len(),
        submitting_authors: s.submitting_authors().iter().map(person).collect(),
        reviewers: s.reviewers().iter().map(person).collect(),
        settings: *s.settings(),
    }
}

fn session_response(st: &AppState, s: &Session) -> Json<SessionView> {
    Json(view(&st.index, s))
}

#[derive(Deserialize, Default)]
struct CreateBody {
    #[serde(default)]
    seeds: Vec<PaperId>,
    #[serde(default)]
    submitting_authors: Vec<AuthorId>,
}

async fn create_session(
    State(st): State<AppState>,
    body: Option<Json<CreateBody>>,
) -> Result<Response, ApiError> {
    let body = body.map(|Json(b)| b).unwrap_or_default();
    let id = uuid::Uuid::new_v4().simple().to_string();
    let mut session = Session::new(id, &st.index);
    if !body.seeds.is_empty() {
        session = session.add_seeds(&st.index, &body.seeds)?;
    }
    if !body.submitting_authors.is_empty() {
        session = session.set_submitting_authors(&st.index, body.submitting_authors)?;
    }
    let session = st.sessions.create(session)?;
    Ok((StatusCode::CREATED, session_response(&st, &session)).into_response())
}

/// Loads a saved session file under a fresh id.
async fn import_session(
    State(st): State<AppState>,
    Json(mut file): Json<SessionFile>,
) -> Result<Response, ApiError> {
    file.session_id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::from_file(file, &st.index)?;
    let session = st.sessions.create(session)?;
    Ok((StatusCode::CREATED, session_response(&st, &session)).into_response())
}

async fn get_session(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionView> {
    st.sessions
        .read(&st.index, &id, |s| Ok(view(&st.index, s)))
        .map(Json)
}

async fn session_file(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let blob = st.sessions.read(&st.index, &id, |s| Ok(s.save()))?;
    Ok(([(header::CONTENT_TYPE, "application/json")], blob).into_response())
}

async fn delete_session(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    if st.sessions.delete(&id)? {
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::session_not_found(&id))
    }
}

#[derive(Deserialize)]
struct SeedsBody {
    paper_ids: Vec<PaperId>,
}

async fn add_seeds(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Json(body): Json<SeedsBody>,
) -> ApiResult<SessionView> {
    let s = st
        .sessions
        .update(&st.index, &id, |s| s.add_seeds(&st.index, &body.paper_ids))?;
    Ok(session_response(&st, &s))
}

async fn remove_seed(
    State(st): State<AppState>,
    Path((id, pid)): Path<(String, String)>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.remove_seed(&st.index, &PaperId::new(pid))
    })?;
    Ok(session_response(&st, &s))
}

async fn select_paper(
    State(st): State<AppState>,
    Path((id, pid)): Path<(String, String)>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.select_paper(&st.index, &PaperId::new(pid))
    })?;
    Ok(session_response(&st, &s))
}

async fn deselect_paper(
    State(st): State<AppState>,
    Path((id, pid)): Path<(String, String)>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.deselect_paper(&st.index, &PaperId::new(pid))
    })?;
    Ok(session_response(&st, &s))
}

#[derive(Deserialize)]
struct AuthorsBody {
    author_ids: Vec<AuthorId>,
}

async fn set_submitting(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Json(body): Json<AuthorsBody>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.set_submitting_authors(&st.index, body.author_ids)
    })?;
    Ok(session_response(&st, &s))
}

async fn select_reviewer(
    State(st): State<AppState>,
    Path((id, rid)): Path<(String, String)>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.select_reviewer(&st.index, &AuthorId::new(rid))
    })?;
    Ok(session_response(&st, &s))
}

async fn remove_reviewer(
    State(st): State<AppState>,
    Path((id, rid)): Path<(String, String)>,
) -> ApiResult<SessionView> {
    let s = st
        .sessions
        .update(&st.index, &id, |s| s.remove_reviewer(&AuthorId::new(rid)))?;
    Ok(session_response(&st, &s))
}

async fn substitutes(
    State(st): State<AppState>,
    Path((id, rid)): Path<(String, String)>,
) -> ApiResult<SubstituteList> {
    st.sessions
        .read(&st.index, &id, |s| {
            Ok(s.substitutes(&st.index, &AuthorId::new(rid))?)
        })
        .map(Json)
}

#[derive(Deserialize)]
struct SwapBody {
    substitute_id: AuthorId,
}

async fn swap_reviewer(
    State(st): State<AppState>,
    Path((id, rid)): Path<(String, String)>,
    Json(body): Json<SwapBody>,
) -> ApiResult<SessionView> {
    let s = st.sessions.update(&st.index, &id, |s| {
        s.swap_reviewer(&st.index, &AuthorId::new(rid), &body.substitute_id)
    })?;
    Ok(session_response(&st, &s))
}

async fn candidates(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let list = st
        .sessions
        .read(&st.index, &id, |s| Ok(s.candidates(&st.index)))?;
    Ok(Json(list).into_response())
}

async fn paper_network(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<PaperNetworkView> {
    st.sessions
        .read(&st.index, &id, |s| {
            Ok(paper_network_view(s.network(), &st.index))
        })
        .map(Json)
}

async fn researcher_network(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<SessionResearcherNetwork> {
    st.sessions
        .read(&st.index, &id, |s| Ok(s.researcher_network(&st.index)))
        .map(Json)
}

#[derive(Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn export(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> Result<Response, ApiError> {
    let doc = st
        .sessions
        .read(&st.index, &id, |s| Ok(s.export(&st.index)?))?;
    match q.format.as_deref().unwrap_or("json") {
        "json" => Ok(([(header::CONTENT_TYPE, "application/json")], doc.to_json()).into_response()),
        "text" => Ok((
            [(header::CONTENT_TYPE, "text/plain; charset=utf-8")],
            doc.to_text(),
        )
            .into_response()),
        other => Err(ApiError::bad_request(
            "invalid_format",
            format!("unknown export format `{other}`"),
        )),
    }
}

async fn update_settings(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Json(settings): Json<Settings>,
) -> ApiResult<SessionView> {
    let s = st
        .sessions
        .update(&st.index, &id, |s| s.update_settings(&st.index, settings))?;
    Ok(session_response(&st, &s))
}
