#include <doctest.h>

#include "dsr/codesim.hpp"
#include "dsr/errors.hpp"

using namespace dsr;

namespace {

SystemParams small_params() {
  // n=5, k=3, d=4, alpha=2, beta=1, M=6: repair cut 2+2+2 >= 6
  SystemParams s;
  s.n = 5;
  s.k = 3;
  s.d = 4;
  s.alpha = 2;
  s.beta = 1;
  s.M = 6;
  return s;
}

}  // namespace

TEST_CASE("codesim: random code init and reconstruction") {
  Field f = Field::make(101);
  StorageState st = init_random_code(small_params(), f, 1);
  CHECK(st.file_dim == 6);
  CHECK(st.nodes.size() == 5);
  for (const auto& [id, m] : st.nodes) {
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 6);
  }
  CHECK(check_reconstruction(st).ok);

  // determinism
  StorageState st2 = init_random_code(small_params(), f, 1);
  CHECK(st.to_json() == st2.to_json());
  StorageState st3 = init_random_code(small_params(), f, 2);
  CHECK(st.to_json() != st3.to_json());
}

TEST_CASE("codesim: reconstruction reports the failing subset") {
  Field f = Field::make(101);
  StorageState st = init_random_code(small_params(), f, 1);
  // clone node 1's rows into node 2: subsets holding both are deficient
  st.nodes.at(2) = st.nodes.at(1);
  auto rep = check_reconstruction(st);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failing_subset.size() == 3);
  CHECK(rep.failing_subset[0] == 0);
  CHECK(rep.failing_subset[1] == 1);
  CHECK(rep.failing_subset[2] == 2);
}

TEST_CASE("codesim: tiny field exhausts the retry budget") {
  SystemParams s;
  s.n = 8;
  s.k = 4;
  s.d = 7;
  s.alpha = 1;
  s.beta = 1;
  s.M = 4;
  CHECK_THROWS_AS(init_random_code(s, Field::make(2), 12345, 2),
                  ConstructionError);
}

TEST_CASE("codesim: functional repair keeps the code reconstructible") {
  Field f = Field::make(101);
  StorageState st = init_random_code(small_params(), f, 7);
  uint64_t seed = 100;
  for (int failed : {0, 3, 0, 2, 4, 1}) {
    std::vector<int> helpers;
    for (int id = 0; id < 5; ++id)
      if (id != failed) helpers.push_back(id);
    auto out = functional_repair(st, failed, helpers, seed++);
    st = out.state;
    REQUIRE(check_reconstruction(st).ok);
    // transcript shape
    REQUIRE(out.transcript.sent.size() == 4);
    for (const auto& [id, m] : out.transcript.sent) {
      CHECK(m.rows() == 1);
      CHECK(m.cols() == 6);
    }
    CHECK(out.transcript.mixing.rows() == 2);
    CHECK(out.transcript.mixing.cols() == 4);
  }
}

TEST_CASE("codesim: repair below the cut bound is infeasible") {
  Field f = Field::make(101);
  StorageState st = init_random_code(small_params(), f, 7);
  // two helpers: min(2,2)+min(2,1)+min(2,0) = 3 < 6
  CHECK_THROWS_AS(functional_repair(st, 0, {1, 2}, 5), InfeasibleError);
  CHECK_THROWS_AS(functional_repair(st, 0, {0, 1, 2, 3}, 5), ValidationError);
  CHECK_THROWS_AS(functional_repair(st, 9, {1, 2, 3, 4}, 5), ValidationError);
}

TEST_CASE("codesim: k = 1 full download") {
  SystemParams s;
  s.n = 3;
  s.k = 1;
  s.d = 1;
  s.alpha = 2;
  s.beta = 2;
  s.M = 2;
  Field f = Field::make(101);
  StorageState st = init_random_code(s, f, 3);
  auto out = functional_repair(st, 2, {0}, 9);
  CHECK(check_reconstruction(out.state).ok);
  CHECK(out.state.nodes.at(2).rank() == 2);
}

TEST_CASE("codesim: vandermonde MSR construction") {
  for (int n : {3, 4}) {
    int k = 2;
    int r = n * (n - k + 1) + 1;
    Field f = Field::smallest((uint32_t)r);
    StorageState st = construct_msr_vandermonde(n, k, f);
    CHECK(st.file_dim == k * (n - k + 1));
    CHECK((int)st.nodes.size() == n);
    CHECK(st.helpers.at(0).rows() == 1);
    CHECK(st.params.alpha == n - k + 1);
    CHECK(check_reconstruction(st).ok);
    // alpha = M/k: the code sits at the MSR point
    CHECK(st.params.alpha * k == st.params.M);
  }
  CHECK_THROWS_AS(construct_msr_vandermonde(4, 2, Field::make(11)),
                  ValidationError);  // q < r = 13
  CHECK_THROWS_AS(construct_msr_vandermonde(3, 3, Field::make(17)),
                  ValidationError);
}

TEST_CASE("codesim: vandermonde repair with the repairing storage node") {
  StorageState st = construct_msr_vandermonde(4, 2, Field::make(13));
  uint64_t seed = 11;
  for (int round = 0; round < 2; ++round)
    for (int failed = 0; failed < 4; ++failed) {
      st = vandermonde_repair(st, failed, seed++);
      REQUIRE(check_reconstruction(st).ok);
    }
}

TEST_CASE("codesim: dropping a helper from the MSR repair is infeasible") {
  StorageState st = construct_msr_vandermonde(4, 2, Field::make(13));
  // n-2 survivors plus the repairing node: cut 3+2 = 5 < M = 6
  CHECK_THROWS_AS(functional_repair(st, 0, {1, 2}, 5, {0}), InfeasibleError);
}

TEST_CASE("codesim: MBR repairing node lifecycle with alpha' = k*beta") {
  Field f = Field::make(101);
  // n=6, k=3, d=5, beta=1: alpha=6, M=15, alpha'=3
  StorageState st = init_mbr_helper_system(6, 3, 5, 1, 3, f, 21);
  CHECK(st.helpers.at(0).rows() == 3);
  CHECK(st.params.M == 15);
  for (int stage = 1; stage <= 8; ++stage) {
    st = mbr_helper_lifecycle(st, stage, (stage - 1) % 6, 500);
    REQUIRE(check_reconstruction(st).ok);
  }
  // after k stages all blocks are filled
  CHECK(st.helpers.at(0).rank() == 3);
}

TEST_CASE("codesim: MBR lifecycle with alpha' = (k-1)*beta fails by stage k") {
  Field f = Field::make(101);
  StorageState st = init_mbr_helper_system(6, 3, 5, 1, 2, f, 21);
  bool failed = false;
  try {
    for (int stage = 1; stage <= 3; ++stage)
      st = mbr_helper_lifecycle(st, stage, stage - 1, 500);
  } catch (const ConstructionError&) {
    failed = true;
  }
  CHECK(failed);
}

TEST_CASE("codesim: state json round trip") {
  StorageState st = construct_msr_vandermonde(3, 2, Field::make(7));
  StorageState back = StorageState::from_json(st.to_json());
  CHECK(back.to_json() == st.to_json());
  CHECK(back.nodes.size() == st.nodes.size());
  CHECK(back.nodes.at(1) == st.nodes.at(1));
  CHECK(back.helpers.at(0) == st.helpers.at(0));
  CHECK(back.params.alpha == st.params.alpha);
}
