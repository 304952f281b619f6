#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "test_support.hpp"

using namespace smoothnet;
using Catch::Approx;
using testing_support::vec;

namespace {

SignalStream parse(const std::string& text, LoadReport* report = nullptr) {
  std::istringstream in(text);
  return load_csv(in, report);
}

}  // namespace

TEST_CASE("load_csv parses a small file", "[ingest]") {
  const SignalStream s = parse("date,MSFT,AAPL,AMZN\n2020-01-02,1,2,3\n2020-01-03,4.5,-5,6e-3\n");
  CHECK(s.n_nodes() == 3);
  CHECK(s.size() == 2);
  CHECK(s.node_names == std::vector<std::string>{"MSFT", "AAPL", "AMZN"});
  CHECK(s.samples[1].timestamp == "2020-01-03");
  CHECK(s.samples[1].values == vec({4.5, -5, 6e-3}));
}

TEST_CASE("load_csv drops incomplete rows and reports them", "[ingest]") {
  LoadReport report;
  const SignalStream s =
      parse("date,A,B\n2020-01-02,1,2\n2020-01-03,,2\n2020-01-06,1,x\n2020-01-07,1\n\n2020-01-08,3,4\r\n", &report);
  CHECK(s.size() == 2);
  CHECK(report.dropped_rows == 3);
  CHECK(report.dropped_lines == std::vector<std::size_t>{3, 4, 5});
  CHECK(s.samples[1].values == vec({3, 4}));
}

TEST_CASE("load_csv input errors", "[ingest]") {
  CHECK_THROWS_AS(parse(""), input_error);
  CHECK_THROWS_AS(parse("\n\n"), input_error);
  CHECK_THROWS_AS(parse("date\n2020-01-01\n"), input_error);
  CHECK_THROWS_AS(parse("date,A,,B\n"), input_error);
  CHECK_THROWS_AS(parse("date,A\n2020-01-02,1\n2020-01-02,2\n"), input_error);
  CHECK_THROWS_AS(parse("date,A\n2020-01-03,1\n2020-01-02,2\n"), input_error);
  CHECK_THROWS_AS(load_csv(std::string("/nonexistent/prices.csv")), input_error);
}

TEST_CASE("load_csv orders numeric timestamps numerically", "[ingest]") {
  const SignalStream s = parse("t,1,2\n9,0,1\n10,1,0\n");
  CHECK(s.size() == 2);
  CHECK_THROWS_AS(parse("t,1,2\n10,0,1\n9,1,0\n"), input_error);
}

TEST_CASE("CSV round trip is exact", "[ingest][property]") {
  Rng rng(71);
  SignalStream s;
  s.node_names = {"A", "B", "C", "D"};
  for (int t = 0; t < 200; ++t) {
    Vector v = testing_support::normal_vector(4, rng);
    v[0] *= 1e-300;
    v[1] *= 1e12;
    s.samples.push_back({std::to_string(t + 1), v});
  }
  s.samples[5].values[2] = 0.1;
  s.samples[6].values[3] = -0.0;
  std::ostringstream out;
  write_csv(out, s, "t");
  std::istringstream in(out.str());
  const SignalStream back = load_csv(in);
  REQUIRE(back.node_names == s.node_names);
  REQUIRE(back.size() == s.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    REQUIRE(back.samples[t].timestamp == s.samples[t].timestamp);
    REQUIRE(back.samples[t].values == s.samples[t].values);
  }
}

TEST_CASE("log_transform examples", "[ingest]") {
  const SignalStream s{{"A", "B"}, {{"d1", vec({1, std::exp(1.0)})}, {"d2", vec({std::exp(2.0), 1})}}};
  const SignalStream l = log_transform(s);
  CHECK(l.samples[0].values[0] == 0.0);
  CHECK(l.samples[0].values[1] == Approx(1.0).epsilon(1e-15));
  CHECK(l.samples[1].values[0] == Approx(2.0).epsilon(1e-15));

  const SignalStream bad{{"A", "B"}, {{"d1", vec({1, 2})}, {"d2", vec({3, 0})}}};
  try {
    log_transform(bad);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("d2") != std::string::npos);
    CHECK(msg.find("B") != std::string::npos);
  }
}

TEST_CASE("discrete_gradient examples", "[ingest]") {
  const SignalStream constant{{"A", "B"}, {{"d1", vec({5, 7})}, {"d2", vec({5, 7})}, {"d3", vec({5, 7})}}};
  const SignalStream g = discrete_gradient(constant);
  REQUIRE(g.size() == 2);
  for (const auto& s : g.samples) CHECK(s.values == vec({0, 0}));
  CHECK(g.samples[0].timestamp == "d2");

  const SignalStream up{{"A"}, {{"d1", vec({100})}, {"d2", vec({110})}}};
  const SignalStream r = discrete_gradient(up);
  CHECK(r.size() == 1);
  CHECK(r.samples[0].values[0] == Approx(0.10).epsilon(1e-14));
  CHECK(discrete_gradient(up, ReturnKind::log).samples[0].values[0] == Approx(std::log(1.1)).epsilon(1e-14));

  CHECK_THROWS_AS(discrete_gradient(SignalStream{{"A"}, {{"d1", vec({1})}}}), std::invalid_argument);
  CHECK_THROWS_AS(discrete_gradient(SignalStream{{"A"}, {{"d1", vec({0})}, {"d2", vec({1})}}}),
                  std::invalid_argument);
}

TEST_CASE("bundled market data loads cleanly", "[ingest]") {
  LoadReport report;
  const SignalStream s = load_csv(std::string(SMOOTHNET_DATA_DIR "/market.csv"), &report);
  CHECK(s.n_nodes() == 10);
  CHECK(s.size() == 750);
  CHECK(report.dropped_rows == 0);
  CHECK(discrete_gradient(s).size() == 749);
}
