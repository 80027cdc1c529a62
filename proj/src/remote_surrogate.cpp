#include <condition_variable>
#include <mutex>

#include "cellscope/errors.hpp"
#include "cellscope/surrogate.hpp"

#include <httplib.h>
#include <json.hpp>

namespace cellscope {

struct RemoteSurrogate::Impl {
  std::string host;
  int port = 80;
  RemoteOptions opts;

  mutable std::mutex mu;
  mutable std::condition_variable cv;
  mutable int in_flight = 0;

  void acquire() const {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return in_flight < opts.max_in_flight; });
    ++in_flight;
  }
  void release() const {
    {
      std::lock_guard<std::mutex> lock(mu);
      --in_flight;
    }
    cv.notify_one();
  }
};

namespace {

// Splits http://host:port into (host, port); path components are not
// supported, the endpoint is fixed to /predict.
std::pair<std::string, int> split_url(const std::string& url) {
  std::string rest;
  int default_port = 80;
  if (url.rfind("http://", 0) == 0) {
    rest = url.substr(7);
  } else if (url.rfind("https://", 0) == 0) {
    throw DataError("this build speaks plain HTTP only; use an http:// endpoint");
  } else {
    throw DataError("remote surrogate URL must start with http://");
  }
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  auto colon = rest.rfind(':');
  if (colon == std::string::npos) return {rest, default_port};
  return {rest.substr(0, colon), std::stoi(rest.substr(colon + 1))};
}

}  // namespace

RemoteSurrogate::RemoteSurrogate(std::string base_url, SpaceSpec spec, RemoteOptions opts)
    : spec_(std::move(spec)), impl_(std::make_unique<Impl>()) {
  auto [host, port] = split_url(base_url);
  impl_->host = host;
  impl_->port = port;
  impl_->opts = opts;
}

RemoteSurrogate::~RemoteSurrogate() = default;

double RemoteSurrogate::evaluate_impl(const Architecture& arch) const {
  nlohmann::json body = {{"genotype", serialize_genotype(arch, spec_)}};
  std::string payload = body.dump();

  impl_->acquire();
  struct Release {
    const Impl* impl;
    ~Release() { impl->release(); }
  } release{impl_.get()};

  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= impl_->opts.retries; ++attempt) {
    httplib::Client client(impl_->host, impl_->port);
    client.set_connection_timeout(impl_->opts.timeout_seconds);
    client.set_read_timeout(impl_->opts.timeout_seconds);
    auto res = client.Post("/predict", payload, "application/json");
    if (!res) {
      last_error = "connection failed";
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("accuracy") ||
        !reply["accuracy"].is_number()) {
      last_error = "malformed response body";
      continue;
    }
    return reply["accuracy"].get<double>();
  }
  throw EvalError(EvalError::Kind::transport,
                  "remote prediction failed after " +
                      std::to_string(impl_->opts.retries + 1) + " attempts: " + last_error);
}

}  // namespace cellscope
