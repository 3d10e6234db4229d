#include "ringnet/config.hpp"

#include <doctest.h>

#include <string>

using namespace ringnet;

namespace {

const char* kMinimal = R"({
  "seed": 3,
  "episodes": 20,
  "conditions": [
    {"id": "flat", "targets": [[0,0],[0,1],[1,0],[1,1]], "obs_base": [0, 0.3, 0.1]}
  ],
  "schedule": [{"begin": 0, "end": 20, "condition": "flat"}]
})";

std::string with(const std::string& key_value) {
  std::string s = kMinimal;
  return "{" + key_value + "," + s.substr(1);
}

}  // namespace

TEST_CASE("defaults follow the training table") {
  const ExperimentConfig c = parse_config(kMinimal);
  CHECK(c.seed == 3);
  CHECK(c.episodes == 20);
  CHECK(c.timesteps_per_episode == 30);
  CHECK(c.reward_mode == RewardMode::kSpeed);
  CHECK(c.learn.eta == 0.5);
  CHECK(c.learn.eta_sigma == 0.05);
  CHECK(c.learn.eta_v == 0.2);
  CHECK(c.learn.eta_o == 0.5);
  CHECK(c.learn.sigma_min == 0.01);
  CHECK(c.learn.sigma_max == 0.05);
  CHECK(c.learn.H == 14);
  CHECK(c.learn.replay_capacity == 8);
  CHECK(c.boundary.omega == 6);
  CHECK(c.boundary.iota == 0.95);
  CHECK(c.initial_subnetworks == 1);
  CHECK_FALSE(c.growth_cap.has_value());
  CHECK(c.n_fb() == 3);
  CHECK(c.n_actions() == 2);
  CHECK(c.condition("flat").targets(3, 1) == 1.0);
}

TEST_CASE("round trip through text") {
  ExperimentConfig c = parse_config(with(R"("reward_mode": "cot", "growth_cap": 2, "ablation": {"naive_transfer": true})"));
  CHECK(c.reward_mode == RewardMode::kCot);
  CHECK(*c.growth_cap == 2);
  CHECK(c.ablation.naive_transfer);
  const std::string text = config_to_text(c);
  CHECK(config_to_text(parse_config(text)) == text);
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("bogus": 1)")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("learning": {"eta": 0.5, "etaa": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("reward_mode": "distance")")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("tau": 1.5)")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("learning": {"sigma_min": 0.1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("boundary": {"omega": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(R"("tau": "x")")), ConfigError);
  std::string s = kMinimal;
  s.replace(s.find("\"end\": 20"), 9, "\"end\": 10");
  CHECK_THROWS_AS(parse_config(s), ConfigError);
  std::string unknown = kMinimal;
  unknown.replace(unknown.find("\"condition\": \"flat\""), 19, "\"condition\": \"hill\"");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
