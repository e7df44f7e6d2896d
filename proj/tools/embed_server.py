#!/usr/bin/env python3
"""Sentence embedding endpoint for the docadopt remote provider.

POST /embed {"model_id": str, "texts": [str]} -> {"model_id": str, "vectors": [[float]]}
GET /health -> {"status": "ok", "models": [...]}
"""
import argparse
import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from sentence_transformers import SentenceTransformer

log = logging.getLogger("embed_server")

_models = {}
_lock = threading.Lock()


def model_for(model_id):
    with _lock:
        if model_id not in _models:
            name = model_id if "/" in model_id else f"sentence-transformers/{model_id}"
            log.info("loading %s", name)
            _models[model_id] = SentenceTransformer(name, device="cpu")
        return _models[model_id]


class Handler(BaseHTTPRequestHandler):
    def _reply(self, status, body):
        data = json.dumps(body).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        if self.path == "/health":
            self._reply(200, {"status": "ok", "models": sorted(_models)})
        else:
            self._reply(404, {"error": "not found"})

    def do_POST(self):
        if self.path != "/embed":
            self._reply(404, {"error": "not found"})
            return
        try:
            req = json.loads(self.rfile.read(int(self.headers.get("Content-Length", 0))))
            model_id = req["model_id"]
            texts = req["texts"]
            if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
                raise ValueError("texts must be a list of strings")
        except (ValueError, KeyError, TypeError) as e:
            self._reply(400, {"error": str(e)})
            return
        try:
            vectors = model_for(model_id).encode(texts, batch_size=64, convert_to_numpy=True)
        except Exception as e:  # model download or inference failure
            log.exception("embedding failed")
            self._reply(503, {"error": str(e)})
            return
        self._reply(200, {"model_id": model_id, "vectors": vectors.astype(float).tolist()})

    def log_message(self, fmt, *args):
        log.debug(fmt, *args)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8089)
    parser.add_argument("--preload", action="append", default=[], help="model id to load at startup")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    for m in args.preload:
        model_for(m)
    server = ThreadingHTTPServer((args.host, args.port), Handler)
    log.info("listening on %s:%d", args.host, args.port)
    server.serve_forever()


if __name__ == "__main__":
    main()
