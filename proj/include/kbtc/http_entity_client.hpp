#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "httplib.h"
#include "kbtc/enrichment.hpp"
#include "kbtc/error.hpp"

namespace kbtc {

// Entity lookup against an HTTP service:
//   GET <path>?entity=<tagged token>
// answering 200 with one `SOURCE<TAB>text<TAB>score` line per candidate,
// SOURCE in {TITLE, CATEGORY, LINK}. Connection failures and non-200
// responses raise ClientUnavailable.
class HttpEntityClient final : public ExternalEntityClient {
 public:
  HttpEntityClient(std::string host, int port, std::string path = "/lookup",
                   std::chrono::milliseconds timeout = std::chrono::milliseconds(2000))
      : host_(std::move(host)), port_(port), path_(std::move(path)), timeout_(timeout) {}

  CandidateList lookup(std::string_view tagged_token) const override {
    httplib::Client client(host_, port_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    httplib::Params params{{"entity", std::string(tagged_token)}};
    auto res = client.Get(path_, params, httplib::Headers{});
    if (!res) {
      throw Error(ErrorCode::kClientUnavailable,
                  "entity service " + host_ + ":" + std::to_string(port_) + " unreachable: " +
                      httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kClientUnavailable,
                  "entity service answered HTTP " + std::to_string(res->status));
    }
    return parse_response(res->body);
  }

  static CandidateList parse_response(std::string_view body) {
    CandidateList out;
    std::size_t start = 0;
    while (start < body.size()) {
      auto eol = body.find('\n', start);
      auto line = body.substr(start, eol == std::string_view::npos ? body.size() - start : eol - start);
      start = eol == std::string_view::npos ? body.size() : eol + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty()) continue;
      auto t1 = line.find('\t');
      auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string_view::npos) {
        throw Error(ErrorCode::kClientUnavailable, "malformed entity service response line");
      }
      auto source = line.substr(0, t1);
      CandidateSource s;
      if (source == "TITLE") {
        s = CandidateSource::kTitle;
      } else if (source == "CATEGORY") {
        s = CandidateSource::kCategory;
      } else if (source == "LINK") {
        s = CandidateSource::kLink;
      } else {
        throw Error(ErrorCode::kClientUnavailable, "unknown candidate source in entity service response");
      }
      double score;
      try {
        score = std::stod(std::string(line.substr(t2 + 1)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kClientUnavailable, "bad score in entity service response");
      }
      out.push_back({s, std::string(line.substr(t1 + 1, t2 - t1 - 1)), score});
    }
    return out;
  }

 private:
  std::string host_;
  int port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

}  // namespace kbtc
