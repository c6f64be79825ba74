#pragma once

#include <string>

#include <httplib.h>

#include "weave/service.hpp"

namespace weave {

inline const char* const kEndpoints[] = {"/parse", "/canon", "/enum", "/equiv", "/mine",
                                         "/session/init", "/session/step", "/session/candidates"};

/// Mounts every endpoint on `server` as POST application/json.
inline void mount_service(httplib::Server& server) {
  for (const char* path : kEndpoints) {
    server.Post(path, [path](const httplib::Request& req, httplib::Response& res) {
      const ServiceResponse r = dispatch(path, req.body);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    });
  }
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string error = res.status == 404 ? "not-found" : "http-" + std::to_string(res.status);
    res.set_content(json{{"error", error}, {"message", req.method + " " + req.path}}.dump(), "application/json");
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", "internal"}, {"message", what}}.dump(), "application/json");
  });
}

}  // namespace weave
