use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::thread;

use percent_encoding::percent_decode_str;
use tiny_http::{Header, Method, Request, Response, Server, StatusCode};
use vreud_core::io::content_type;

use crate::commands::{Exit, Failure};

const WORKERS: usize = 4;

/// Maps a request target onto a file under `root`. `Err` carries the status
/// to answer with.
pub fn resolve(root: &Path, target: &str) -> Result<PathBuf, u16> {
    let raw = target.split(['?', '#']).next().unwrap_or("");
    let decoded = percent_decode_str(raw).decode_utf8().map_err(|_| 400u16)?;
    if decoded.contains('\\') || decoded.contains('\0') {
        return Err(403);
    }
    let mut path = root.to_path_buf();
    for seg in decoded.split('/') {
        match seg {
            "" | "." => {}
            ".." => return Err(403),
            s => path.push(s),
        }
    }
    if path.is_dir() {
        path.push("index.html");
    }
    let real = fs::canonicalize(&path).map_err(|_| 404u16)?;
    if !real.starts_with(root) {
        return Err(403);
    }
    if real.is_file() {
        Ok(real)
    } else {
        Err(404)
    }
}

fn respond(root: &Path, req: Request) {
    let method = req.method().clone();
    let url = req.url().to_string();
    let status = if !matches!(method, Method::Get | Method::Head) {
        Err(405)
    } else {
        resolve(root, &url)
    };
    let result = match status {
        Ok(file) => match fs::read(&file) {
            Ok(bytes) => {
                let ext = file.extension().and_then(|e| e.to_str()).unwrap_or("");
                let header = Header::from_bytes("Content-Type", content_type(ext))
                    .expect("static header is valid");
                eprintln!("{method} {url} 200");
                let body = if method == Method::Head {
                    Vec::new()
                } else {
                    bytes
                };
                req.respond(Response::from_data(body).with_header(header))
            }
            Err(_) => {
                eprintln!("{method} {url} 500");
                req.respond(Response::empty(StatusCode(500)))
            }
        },
        Err(code) => {
            eprintln!("{method} {url} {code}");
            let text = match code {
                403 => "forbidden",
                404 => "not found",
                405 => "method not allowed",
                _ => "bad request",
            };
            req.respond(Response::from_string(text).with_status_code(code))
        }
    };
    if let Err(e) = result {
        eprintln!("response failed: {e}");
    }
}

pub fn serve(dir: &Path, host: &str, port: u16) -> Result<(), Failure> {
    let root = fs::canonicalize(dir).map_err(|e| Failure::io(dir, e))?;
    if !root.is_dir() {
        return Err(Failure::new(
            Exit::Input,
            format!("{} is not a directory", dir.display()),
        ));
    }
    let server = Server::http((host, port))
        .map_err(|e| Failure::new(Exit::Input, format!("cannot listen on {host}:{port}: {e}")))?;
    match server.server_addr().to_ip() {
        Some(addr) => eprintln!("serving {} at http://{addr}/", root.display()),
        None => eprintln!("serving {}", root.display()),
    }
    let server = Arc::new(server);
    let root = Arc::new(root);
    let workers: Vec<_> = (0..WORKERS)
        .map(|_| {
            let server = Arc::clone(&server);
            let root = Arc::clone(&root);
            thread::spawn(move || {
                for req in server.incoming_requests() {
                    respond(&root, req);
                }
            })
        })
        .collect();
    for w in workers {
        if w.join().is_err() {
            return Err(Failure::new(Exit::Internal, "server worker panicked"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traversal_and_missing() {
        let dir = tempfile::tempdir().unwrap();
        let root = fs::canonicalize(dir.path()).unwrap();
        fs::write(root.join("index.html"), "<html></html>").unwrap();
        assert_eq!(resolve(&root, "/").unwrap(), root.join("index.html"));
        assert_eq!(
            resolve(&root, "/index.html?x=1").unwrap(),
            root.join("index.html")
        );
        assert_eq!(resolve(&root, "/../etc/passwd"), Err(403));
        assert_eq!(resolve(&root, "/%2e%2e/etc/passwd"), Err(403));
        assert_eq!(resolve(&root, "/missing"), Err(404));
    }
}
