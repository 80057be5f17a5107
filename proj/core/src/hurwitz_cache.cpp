#include "hproj/hurwitz_cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hproj/quadforms.hpp"

namespace hproj {

HurwitzCache::HurwitzCache(std::filesystem::path file) : file_(std::move(file)) { load(); }

HurwitzCache::~HurwitzCache() {
  try {
    flush();
  } catch (...) {
  }
}

HurwitzCache HurwitzCache::from_environment() {
  const char* dir = std::getenv(kCacheDirEnv);
  if (dir == nullptr || *dir == '\0') return HurwitzCache();
  std::filesystem::create_directories(dir);
  return HurwitzCache(std::filesystem::path(dir) / "hurwitz.csv");
}

void HurwitzCache::load() {
  if (!file_ || !std::filesystem::exists(*file_)) return;
  std::ifstream in(*file_);
  if (!in) throw std::runtime_error("HurwitzCache: cannot read " + file_->string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint64_t n;
    std::int64_t num, den;
    char c1, c2;
    if (!(ss >> n >> c1 >> num >> c2 >> den) || c1 != ',' || c2 != ',') {
      throw std::runtime_error("HurwitzCache: malformed line " + std::to_string(lineno) + " in " + file_->string());
    }
    values_.emplace(n, Rational(num, den));
  }
}

std::optional<Rational> HurwitzCache::find(std::uint64_t n) const {
  std::shared_lock lock(mu_);
  auto it = values_.find(n);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void HurwitzCache::insert(std::uint64_t n, const Rational& v) {
  std::unique_lock lock(mu_);
  if (values_.emplace(n, v).second && file_) pending_.push_back(n);
}

Rational HurwitzCache::get(std::uint64_t n) {
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  if (auto v = find(n)) return *v;
  Rational v = hurwitz(n);
  insert(n, v);
  return v;
}

void HurwitzCache::prefetch(std::span<const std::uint64_t> ns, unsigned threads) {
  std::vector<std::uint64_t> todo;
  {
    std::shared_lock lock(mu_);
    for (auto n : ns)
      if (n % 4 != 1 && n % 4 != 2 && !values_.count(n)) todo.push_back(n);
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  if (todo.empty()) return;
  threads = std::max(1u, threads);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) insert(todo[i], hurwitz(todo[i]));
    } catch (...) {
      std::lock_guard g(failure_mu);
      if (!failure) failure = std::current_exception();
      next = todo.size();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

void HurwitzCache::flush() {
  std::unique_lock lock(mu_);
  if (!file_ || pending_.empty()) return;
  std::ofstream out(*file_, std::ios::app);
  if (!out) throw std::runtime_error("HurwitzCache: cannot write " + file_->string());
  std::sort(pending_.begin(), pending_.end());
  for (auto n : pending_) {
    const Rational& v = values_.at(n);
    out << n << ',' << v.num() << ',' << v.den() << '\n';
  }
  pending_.clear();
}

std::size_t HurwitzCache::size() const {
  std::shared_lock lock(mu_);
  return values_.size();
}

HurwitzCache& hurwitz_cache() {
  static HurwitzCache cache = HurwitzCache::from_environment();
  return cache;
}

}  // namespace hproj
