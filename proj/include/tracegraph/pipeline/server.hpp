#pragma once

#include <memory>
#include <string>

#include "tracegraph/pipeline/store.hpp"

namespace httplib {
class Server;
}

namespace tracegraph::pipeline {

// JSON API used by the annotation UI:
//   GET  /trials?offset=&limit=              paged trial list
//   GET  /trials/{id}                        transcript and metadata
//   POST /validate                           trace source -> graph + report
//   GET  /annotations/{trial}                all coders' annotations
//   GET  /annotations/{trial}/{coder}
//   PUT  /annotations/{trial}/{coder}        {"source", "version", "coding_time_s"?}
//   GET  /graphs/{trial}/{coder}.dot
//   GET  /reliability?coder_a=&coder_b=      normalized GED per shared trial
// Errors are {"code", "message"} with 400 for bad input or an unparseable
// trace, 404 for unknown trials or records, 409 for a stale annotation version.
// The store must outlive the server.
std::unique_ptr<httplib::Server> make_server(Store& store);

// Blocks until the server stops. Returns false when the address cannot be bound.
bool serve(Store& store, const std::string& host, int port);

}  // namespace tracegraph::pipeline
