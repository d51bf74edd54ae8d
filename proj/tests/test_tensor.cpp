#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <functional>

#include "socnav/ad/adam.hpp"
#include "socnav/ad/mlp.hpp"
#include "socnav/ad/serialize.hpp"
#include "socnav/ad/tape.hpp"
#include "socnav/common/rng.hpp"

using namespace socnav;
using namespace socnav::ad;

namespace {

Tensor random_tensor(Rng& rng, int rows, int cols, double scale = 1.0) {
  Tensor t(rows, cols);
  for (int64_t i = 0; i < t.size(); ++i) t.data()[i] = rng.uniform(-scale, scale);
  return t;
}

// Central finite differences against the recorded gradients. `loss_fn` must
// route every parameter through tape.watch so both paths see updates.
double max_grad_rel_error(const std::function<Tensor(Tape&)>& loss_fn,
                          std::vector<Parameter*> params, double eps = 1e-5) {
  Tape tape;
  Tensor loss = loss_fn(tape);
  tape.backward(loss);
  std::vector<Tensor> analytic;
  for (auto* p : params) analytic.push_back(p->grad.clone());

  double worst = 0.0;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Parameter& p = *params[pi];
    for (int64_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value.data()[i];
      p.value.data()[i] = saved + eps;
      Tape plus(false);
      const double f_plus = loss_fn(plus).item();
      p.value.data()[i] = saved - eps;
      Tape minus(false);
      const double f_minus = loss_fn(minus).item();
      p.value.data()[i] = saved;
      const double numeric = (f_plus - f_minus) / (2.0 * eps);
      const double a = analytic[pi].data()[i];
      const double denom = std::max({std::abs(numeric), std::abs(a), 1e-8});
      worst = std::max(worst, std::abs(numeric - a) / denom);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("matmul identity and hand arithmetic") {
  Tape tape(false);
  Tensor eye = Tensor::from_rows({{1, 0}, {0, 1}});
  Tensor a = Tensor::from_rows({{2, 3}, {5, 7}});
  Tensor out = tape.matmul(eye, a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(out.at(i, j) == a.at(i, j));

  Tensor b = Tensor::from_rows({{1, 2}, {3, 4}});
  Tensor ones = Tensor::from_rows({{1}, {1}});
  Tensor prod = tape.matmul(b, ones);
  CHECK(prod.at(0, 0) == 3);
  CHECK(prod.at(1, 0) == 7);
}

TEST_CASE("matmul shape mismatch raises") {
  Tape tape(false);
  Tensor a(2, 3), b(2, 3);
  CHECK_THROWS_AS((void)tape.matmul(a, b), Error);
}

TEST_CASE("gradient of sum(A*B) w.r.t. A equals ones * B^T") {
  Rng rng(21);
  Parameter a("a", random_tensor(rng, 3, 4));
  Tensor b = random_tensor(rng, 4, 5);
  Tape tape;
  Tensor loss = tape.sum_all(tape.matmul(tape.watch(a), b));
  tape.backward(loss);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      double expect = 0.0;
      for (int c = 0; c < 5; ++c) expect += b.at(j, c);
      CHECK(a.grad.at(i, j) == doctest::Approx(expect).epsilon(1e-12));
    }

  const double err = max_grad_rel_error(
      [&](Tape& t) { return t.sum_all(t.matmul(t.watch(a), b)); }, {&a});
  CHECK(err < 1e-6);
}

TEST_CASE("concat_cols widths and zero-width case") {
  Tape tape(false);
  Tensor a(2, 4), b(2, 4);
  CHECK(tape.concat_cols(a, b).cols() == 8);
  Tensor empty(2, 0);
  Tensor same = tape.concat_cols(a, empty);
  CHECK(same.cols() == 4);
  CHECK(same.rows() == 2);
}

TEST_CASE("concat/slice backward splits the gradient one-hot per side") {
  Rng rng(22);
  Parameter a("a", random_tensor(rng, 3, 2));
  Parameter b("b", random_tensor(rng, 3, 3));
  Tape tape;
  Tensor joined = tape.concat_cols(tape.watch(a), tape.watch(b));
  Tensor loss = tape.sum_all(tape.slice_cols(joined, 0, 2));  // only a's side
  tape.backward(loss);
  for (int64_t i = 0; i < a.grad.size(); ++i) CHECK(a.grad.data()[i] == 1.0);
  for (int64_t i = 0; i < b.grad.size(); ++i) CHECK(b.grad.data()[i] == 0.0);

  const double err = max_grad_rel_error(
      [&](Tape& t) {
        Tensor j = t.concat_cols(t.watch(a), t.watch(b));
        return t.sum_all(t.mul(j, j));
      },
      {&a, &b});
  CHECK(err < 1e-6);
}

TEST_CASE("segment_sum basic rows and empty segments") {
  Tape tape(false);
  Tensor values = Tensor::from_rows({{1, 2}, {3, 4}});
  Tensor out = tape.segment_sum(values, {0, 0}, 3);
  CHECK(out.at(0, 0) == 4);
  CHECK(out.at(0, 1) == 6);
  CHECK(out.at(1, 0) == 0.0);
  CHECK(out.at(2, 1) == 0.0);
}

TEST_CASE("segment_sum equals dense adjacency-transpose multiply") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int nodes = rng.uniform_int(1, 10);
    const int edges = rng.uniform_int(1, 30);
    const int d = rng.uniform_int(1, 6);
    std::vector<int> dst(static_cast<size_t>(edges));
    for (auto& v : dst) v = rng.uniform_int(0, nodes - 1);
    Tensor values = random_tensor(rng, edges, d);

    Tape tape(false);
    Tensor got = tape.segment_sum(values, dst, nodes);

    // Independent oracle: out = M^T values with M[k][dst_k] = 1.
    std::vector<double> expect(static_cast<size_t>(nodes) * d, 0.0);
    for (int k = 0; k < edges; ++k)
      for (int j = 0; j < d; ++j)
        expect[static_cast<size_t>(dst[static_cast<size_t>(k)]) * d + j] +=
            values.at(k, j);
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(got.at(i, j) ==
              doctest::Approx(expect[static_cast<size_t>(i) * d + j]).epsilon(1e-12));
  }
}

TEST_CASE("segment_sum index out of range raises") {
  Tape tape(false);
  Tensor values(2, 2);
  CHECK_THROWS_AS((void)tape.segment_sum(values, {0, 5}, 3), Error);
}

TEST_CASE("segment_softmax singleton, symmetric pair and hand values") {
  Tape tape(false);
  Tensor single = Tensor::from_rows({{3.7}});
  Tensor w1 = tape.segment_softmax(single, {0}, 1);
  CHECK(w1.at(0, 0) == doctest::Approx(1.0));

  Tensor equal = Tensor::from_rows({{0.4}, {0.4}});
  Tensor w2 = tape.segment_softmax(equal, {0, 0}, 1);
  CHECK(w2.at(0, 0) == doctest::Approx(0.5));
  CHECK(w2.at(1, 0) == doctest::Approx(0.5));

  Tensor pair = Tensor::from_rows({{0.0}, {std::log(3.0)}});
  Tensor w3 = tape.segment_softmax(pair, {0, 0}, 1);
  CHECK(w3.at(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w3.at(1, 0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("segment_softmax gradient matches finite differences") {
  Rng rng(24);
  Parameter scores("s", random_tensor(rng, 7, 2));
  const std::vector<int> dst{0, 1, 0, 2, 1, 0, 2};
  Tensor weights = random_tensor(rng, 7, 2);
  const double err = max_grad_rel_error(
      [&](Tape& t) {
        Tensor sm = t.segment_softmax(t.watch(scores), dst, 3);
        return t.sum_all(t.mul(sm, weights));
      },
      {&scores});
  CHECK(err < 1e-5);
}

TEST_CASE("activation values") {
  Tape tape(false);
  Tensor x = Tensor::from_rows({{-1.0, 0.0, 2.0}});
  Tensor leaky = tape.leaky_relu(x, 0.2);
  CHECK(leaky.at(0, 0) == doctest::Approx(-0.2));
  CHECK(leaky.at(0, 2) == doctest::Approx(2.0));
  CHECK(tape.sigmoid(Tensor::zeros(1, 1)).item() == doctest::Approx(0.5));
  CHECK(tape.relu(x).at(0, 0) == 0.0);
  CHECK(tape.tanh(Tensor::zeros(1, 1)).item() == doctest::Approx(0.0));
}

TEST_CASE("activation gradients match finite differences away from kinks") {
  Rng rng(25);
  Parameter x("x", random_tensor(rng, 4, 3));
  // Shift values away from zero to dodge the relu kink.
  for (int64_t i = 0; i < x.value.size(); ++i)
    x.value.data()[i] += x.value.data()[i] >= 0 ? 0.5 : -0.5;

  for (auto kind : {Act::Relu, Act::LeakyRelu, Act::Tanh, Act::Sigmoid}) {
    Activation act{kind, 0.17};
    const double err = max_grad_rel_error(
        [&](Tape& t) {
          Tensor y = act.apply(t, t.watch(x));
          return t.sum_all(t.mul(y, y));
        },
        {&x});
    CAPTURE(static_cast<int>(kind));
    CHECK(err < 1e-6);
  }
}

TEST_CASE("mse values") {
  Tape tape(false);
  Tensor a = Tensor::from_rows({{1, 0}});
  Tensor b = Tensor::from_rows({{0, 0}});
  CHECK(tape.mse(a, a).item() == 0.0);
  CHECK(tape.mse(a, b).item() == doctest::Approx(0.5));

  Tensor half = Tensor::full(2, 2, 0.5);
  Tensor labels = Tensor::from_rows({{0, 1}, {1, 0}});
  CHECK(tape.mse(half, labels).item() == doctest::Approx(0.25));
}

TEST_CASE("mse is non-negative and zero only at equality") {
  Rng rng(26);
  Tape tape(false);
  for (int trial = 0; trial < 30; ++trial) {
    Tensor a = random_tensor(rng, 3, 2);
    Tensor b = random_tensor(rng, 3, 2);
    const double value = tape.mse(a, b).item();
    CHECK(value >= 0.0);
    bool equal = true;
    for (int64_t i = 0; i < a.size(); ++i) equal = equal && a.data()[i] == b.data()[i];
    if (!equal) CHECK(value > 0.0);
  }
}

TEST_CASE("backward: w^2 at w=3 gives 6; disconnected parameter gets zeros") {
  Parameter w("w", Tensor::scalar(3.0));
  Parameter unused("unused", Tensor::zeros(2, 2));
  Tape tape;
  Tensor watched = tape.watch(w);
  tape.watch(unused);
  Tensor loss = tape.mul(watched, watched);
  GradMap grads = tape.backward(loss);
  CHECK(w.grad.item() == doctest::Approx(6.0));
  CHECK(grads.at("unused").at(0, 0) == 0.0);
  CHECK(grads.at("unused").at(1, 1) == 0.0);
}

TEST_CASE("backward requires a scalar loss") {
  Parameter w("w", Tensor::zeros(2, 2));
  Tape tape;
  Tensor x = tape.watch(w);
  CHECK_THROWS_AS(tape.backward(x), Error);
}

TEST_CASE("non-finite op results raise") {
  Tape tape(false);
  Tensor big = Tensor::full(1, 1, 1e308);
  CHECK_THROWS_AS((void)tape.add(big, big), Error);
}

TEST_CASE("mlp forward/backward matches finite differences") {
  Rng rng(27);
  Mlp mlp("mlp", {3, 5, 2}, {Act::Tanh}, {}, rng);
  Tensor x = random_tensor(rng, 4, 3);
  Tensor target = random_tensor(rng, 4, 2);
  std::vector<Parameter*> params = mlp.parameters();
  const double err = max_grad_rel_error(
      [&](Tape& t) { return t.mse(mlp.forward(t, x), target); }, params);
  CHECK(err < 1e-5);
}

TEST_CASE("adam: zero gradient and zero decay leave parameters unchanged") {
  Parameter w("w", Tensor::full(2, 2, 0.7));
  w.grad = Tensor::zeros(2, 2);
  Adam adam(0.1);
  adam.step({&w});
  for (int64_t i = 0; i < w.value.size(); ++i) CHECK(w.value.data()[i] == 0.7);
}

TEST_CASE("adam: first step on f(w)=w^2 moves by about lr") {
  Parameter w("w", Tensor::scalar(1.0));
  Tape tape;
  Tensor x = tape.watch(w);
  tape.backward(tape.mul(x, x));
  Adam adam(0.1);
  adam.step({&w});
  // Bias-corrected first step has magnitude lr up to the epsilon term.
  CHECK(w.value.item() == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("adam: weight decay with zero gradient scales parameters") {
  Parameter w("w", Tensor::scalar(2.0));
  w.grad = Tensor::zeros(1, 1);
  Adam adam(0.1, 1e-6);
  adam.step({&w});
  CHECK(w.value.item() == doctest::Approx(2.0 * (1.0 - 0.1 * 1e-6)).epsilon(1e-15));
}

TEST_CASE("adam is deterministic given identical inputs") {
  auto run = [] {
    Rng rng(31);
    Parameter w("w", random_tensor(rng, 3, 3));
    Adam adam(3e-3, 1e-6);
    for (int i = 0; i < 5; ++i) {
      Tape tape;
      Tensor x = tape.watch(w);
      tape.backward(tape.mse(tape.mul(x, x), Tensor::zeros(3, 3)));
      adam.step({&w});
    }
    return w.value;
  };
  Tensor a = run();
  Tensor b = run();
  for (int64_t i = 0; i < a.size(); ++i) CHECK(a.data()[i] == b.data()[i]);
}

TEST_CASE("dropout: off in eval mode, inverted scaling in train mode") {
  Rng rng(32);
  Tensor x = Tensor::full(10, 10, 1.0);
  Tape tape(false);
  Tensor eval_out = tape.dropout(x, 0.5, rng, false);
  for (int64_t i = 0; i < eval_out.size(); ++i) CHECK(eval_out.data()[i] == 1.0);

  Tensor train_out = tape.dropout(x, 0.5, rng, true);
  int zeros = 0;
  for (int64_t i = 0; i < train_out.size(); ++i) {
    const double v = train_out.data()[i];
    CHECK((v == 0.0 || v == doctest::Approx(2.0)));
    zeros += v == 0.0;
  }
  CHECK(zeros > 10);
  CHECK(zeros < 90);
}

TEST_CASE("tensor archive round-trips values and rejects corruption") {
  Rng rng(33);
  TensorArchive archive;
  archive.tensors.emplace("w", random_tensor(rng, 3, 4));
  archive.tensors.emplace("b", random_tensor(rng, 1, 4));
  archive.extra["note"] = "probe";
  const std::string path = "archive_test.bin";
  archive.save(path);

  TensorArchive loaded = TensorArchive::load(path);
  CHECK(loaded.extra["note"] == "probe");
  REQUIRE(loaded.tensors.count("w") == 1);
  const Tensor& w0 = archive.tensors.at("w");
  const Tensor& w1 = loaded.tensors.at("w");
  for (int64_t i = 0; i < w0.size(); ++i) CHECK(w0.data()[i] == w1.data()[i]);

  // Corrupt the magic.
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f != nullptr);
    std::fputc('X', f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(TensorArchive::load(path), Error);
  std::remove(path.c_str());
}
