#include "corename/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "corename/parallel.hpp"

namespace corename {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorKind::DegenerateResult: return "DegenerateResult";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::RepoError: return "RepoError";
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Usage: return "Usage";
  }
  return "Error";
}

namespace {

int initial_workers() {
  if (const char* env = std::getenv("CORENAME_WORKERS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<int>& workers() {
  static std::atomic<int> n{initial_workers()};
  return n;
}

}  // namespace

int worker_count() { return workers().load(); }

void set_worker_count(int n) { workers().store(std::max(1, n)); }

}  // namespace corename
