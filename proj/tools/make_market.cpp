// Synthetic daily closing prices for ten tickers in two sectors. Returns
// follow a market + sector factor model; on each event day a shock hits
// (large dispersed moves) and sector membership is reshuffled afterwards.
//
//   make_market <out.csv> <events.json> [seed]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "smoothnet/ingest.hpp"

namespace {

constexpr int kDays = 750;
const std::vector<int> kEventDays = {250, 430, 610};  // 0-based trading days
const std::vector<std::string> kTickers = {"MSFT", "AAPL", "AMZN", "GOOG", "NVDA",
                                           "JPM",  "XOM",  "JNJ",  "PG",   "KO"};

// Weekdays only, starting Monday 2019-01-07.
std::string trading_date(int day) {
  static const int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int y = 2019, m = 1, d = 7;
  const int calendar = day / 5 * 7 + day % 5;
  for (int k = 0; k < calendar; ++k) {
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    const int len = days_in_month[m - 1] + (m == 2 && leap ? 1 : 0);
    if (++d > len) {
      d = 1;
      if (++m > 12) {
        m = 1;
        ++y;
      }
    }
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: make_market <out.csv> <events.json> [seed]\n";
    return 2;
  }
  const std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 7;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const std::size_t n = kTickers.size();
  std::vector<int> sector = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  std::vector<double> price(n, 100.0);

  smoothnet::SignalStream s;
  s.node_names = kTickers;
  nlohmann::json events = nlohmann::json::array();
  std::size_t next_event = 0;

  for (int day = 0; day < kDays; ++day) {
    const bool shock = next_event < kEventDays.size() && day == kEventDays[next_event];
    if (day > 0) {
      const double market = 0.006 * normal(rng);
      const double f[2] = {0.008 * normal(rng), 0.008 * normal(rng)};
      for (std::size_t i = 0; i < n; ++i) {
        double r = market + f[sector[i]] + 0.003 * normal(rng);
        if (shock) r += 0.08 * normal(rng);
        price[i] *= std::exp(r);
      }
    }
    const std::string date = trading_date(day);
    if (shock) {
      events.push_back(date);
      ++next_event;
      std::shuffle(sector.begin(), sector.end(), rng);
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = std::round(price[i] * 100.0) / 100.0;
    s.samples.push_back({date, v});
  }

  smoothnet::write_csv(argv[1], s);
  std::ofstream ev(argv[2]);
  ev << nlohmann::json{{"seed", seed}, {"event_dates", events}}.dump(2) << '\n';
  return ev ? 0 : 2;
}
