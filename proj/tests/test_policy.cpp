#include <doctest.h>

#include <cmath>
#include <numeric>

#include "neuronav/error.hpp"
#include "neuronav/policy.hpp"

using namespace neuronav;

TEST_SUITE("policy") {
    TEST_CASE("softmax matches the closed form") {
        const std::vector<double> q{1.0, 2.0, 0.5};
        const double beta = 1.7;
        const auto p = softmax_policy(q, beta);
        double z = 0.0;
        for (double x : q) z += std::exp(beta * x);
        for (std::size_t a = 0; a < q.size(); ++a) CHECK(p[a] == doctest::Approx(std::exp(beta * q[a]) / z));
    }

    TEST_CASE("softmax respects the mask and is stable for huge values") {
        const std::vector<double> q{1000.0, 1e6, -1e6};
        const std::vector<char> mask{1, 0, 1};
        const auto p = softmax_policy(q, 10.0, mask);
        CHECK(p[1] == 0.0);
        CHECK(p[0] == doctest::Approx(1.0));
        CHECK(std::isfinite(p[2]));
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
        CHECK_THROWS_AS(softmax_policy(q, 1.0, std::vector<char>{0, 0, 0}), PolicyError);
    }

    TEST_CASE("beta zero is uniform over available actions") {
        const auto p = softmax_policy(std::vector<double>{3, 1, 2, 9}, 0.0, std::vector<char>{1, 1, 0, 1});
        CHECK(p == std::vector<double>{1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3});
    }

    TEST_CASE("greedy ties go to the lowest index") {
        CHECK(greedy_action(std::vector<double>{1, 3, 3}) == 1);
        CHECK(greedy_action(std::vector<double>{1, 3, 3}, std::vector<char>{1, 0, 1}) == 2);
        CHECK_THROWS_AS(greedy_action(std::vector<double>{1}, std::vector<char>{0}), PolicyError);
    }

    TEST_CASE("epsilon greedy frequencies") {
        const std::vector<double> q{0.0, 5.0, 1.0, 2.0};
        const std::vector<char> mask{1, 1, 1, 0};
        Rng rng(11);
        std::vector<int> hist(4, 0);
        const int n = 20000;
        for (int i = 0; i < n; ++i) ++hist[epsilon_greedy(q, 0.3, mask, rng)];
        CHECK(hist[3] == 0);
        // greedy: 0.7 + 0.3 / 3 = 0.8, others 0.1
        CHECK(std::abs(hist[1] / double(n) - 0.8) < 0.015);
        CHECK(std::abs(hist[0] / double(n) - 0.1) < 0.015);
        CHECK(std::abs(hist[2] / double(n) - 0.1) < 0.015);
    }

    TEST_CASE("epsilon zero always consumes one draw") {
        Rng rng(1);
        for (int i = 0; i < 5; ++i) CHECK(epsilon_greedy(std::vector<double>{0, 1}, 0.0, {}, rng) == 1);
        CHECK(rng.counter() == 5);
    }

    TEST_CASE("sampling follows the distribution") {
        const std::vector<double> p{0.2, 0.0, 0.5, 0.3};
        Rng rng(4);
        std::vector<int> hist(4, 0);
        const int n = 20000;
        for (int i = 0; i < n; ++i) ++hist[sample_action(p, rng)];
        CHECK(hist[1] == 0);
        for (std::size_t a = 0; a < 4; ++a) CHECK(std::abs(hist[a] / double(n) - p[a]) < 0.015);
    }
}
