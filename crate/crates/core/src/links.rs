//! DBLP search links for researchers and papers.

use url::Url;

const DBLP_SEARCH: &str = "https://dblp.org/search";

fn search_url(query: &str) -> String {
    let mut url = Url::parse(DBLP_SEARCH).expect("static url");
    url.query_pairs_mut().append_pair("q", query);
    url.into()
}

pub fn author_url(name: &str) -> String {
    search_url(name.trim())
}

pub fn paper_url(title: &str) -> String {
    search_url(title.trim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_is_form_encoded() {
        assert_eq!(
            author_url("Marco Tarini"),
            "https://dblp.org/search?q=Marco+Tarini"
        );
        assert_eq!(
            paper_url("PolyCube-Maps & more"),
            "https://dblp.org/search?q=PolyCube-Maps+%26+more"
        );
    }
}
