use rbr_core::partition::{finest_partition_with_rounds, type_vector};
use rbr_core::{
    check_local_isomorphism, disjoint_union, equivalence_report, find_isomorphism, finest_partition, fixtures,
    graphs_equivalent, initial_partition, is_canonical, minimise, nodes_doxastically_equivalent, quotient, read_rbr,
    refine_once, serialize_rbr, AgentVerdict, Error, NodeId, NodeMapping, Partition, RbrGraph,
};

fn node(g: &RbrGraph, name: &str) -> NodeId {
    g.node_id(name).unwrap()
}

fn single() -> RbrGraph {
    read_rbr("agents a\nnode n a\nreal a n\n").unwrap()
}

fn block_sizes(p: &Partition) -> Vec<usize> {
    p.blocks().iter().map(Vec::len).collect()
}

#[test]
fn initial_partition_groups_labels() {
    assert_eq!(initial_partition(&fixtures::rcbr()).block_count(), 3);
    let p = initial_partition(&fixtures::belief_collection());
    assert_eq!(block_sizes(&p), vec![3, 3, 1]);
    assert_eq!(initial_partition(&single()).block_count(), 1);
}

#[test]
fn type_vectors_follow_the_three_cases() {
    let g = fixtures::two_agent_rcbr();
    let p = initial_partition(&g);
    // na: own label -> minus own block, b-successor -> its block, no c -> placeholder
    assert_eq!(type_vector(&g, &p, node(&g, "na")), vec![0, 1, 2]);
    assert_eq!(type_vector(&g, &p, node(&g, "nb")), vec![0, -1, 2]);
}

#[test]
fn refinement_examples() {
    let g = fixtures::belief_collection();
    let p = initial_partition(&g);
    assert_eq!(refine_once(&g, &p).unwrap(), p);

    let union = disjoint_union(&fixtures::rcbr(), &fixtures::two_agent_rcbr()).unwrap();
    let p = initial_partition(&union);
    let r = refine_once(&union, &p).unwrap();
    assert!(!r.same_block(NodeId(0), NodeId(3)), "the two a-nodes split");
    assert!(r.refines(&p));

    let d = Partition::discrete(g.node_count());
    assert_eq!(refine_once(&g, &d).unwrap(), d);
}

#[test]
fn malformed_partitions_are_rejected() {
    let g = fixtures::rcbr();
    assert_eq!(
        refine_once(&g, &Partition::from_blocks(vec![0, 0, 1]).unwrap()).unwrap_err(),
        Error::LabelMixingPartition
    );
    assert!(matches!(
        refine_once(&g, &Partition::discrete(2)),
        Err(Error::MalformedPartition(_))
    ));
    assert!(Partition::from_blocks(vec![0, 2]).is_err());
}

#[test]
fn finest_partitions() {
    let p = finest_partition(&fixtures::belief_collection());
    assert_eq!(block_sizes(&p), vec![3, 3, 1]);
    assert_eq!(finest_partition(&fixtures::rcbr()).block_count(), 3);
    assert_eq!(finest_partition(&fixtures::uncommon_belief_doxastic()).block_count(), 5);
    let (_, rounds) = finest_partition_with_rounds(&fixtures::belief_collection());
    assert_eq!(rounds, 1);
}

#[test]
fn node_equivalence_across_graphs() {
    let two = fixtures::two_agent_rcbr();
    let unc = fixtures::uncommon_belief();
    let rcbr = fixtures::rcbr();
    let dox = fixtures::uncommon_belief_doxastic();
    assert!(nodes_doxastically_equivalent(&two, node(&two, "na"), &unc, node(&unc, "na")).unwrap());
    assert!(nodes_doxastically_equivalent(&rcbr, node(&rcbr, "nc"), &dox, node(&dox, "nc")).unwrap());
    assert!(!nodes_doxastically_equivalent(&rcbr, node(&rcbr, "na"), &two, node(&two, "na")).unwrap());

    let other = read_rbr("agents a b\nnode x a\nreal a x\n").unwrap();
    assert_eq!(
        nodes_doxastically_equivalent(&rcbr, NodeId(0), &other, NodeId(0)).unwrap_err(),
        Error::AgentUniverseMismatch
    );
}

#[test]
fn graph_equivalence() {
    let unc = fixtures::uncommon_belief();
    assert!(graphs_equivalent(&fixtures::belief_collection(), &unc).unwrap());
    assert!(!graphs_equivalent(&fixtures::rcbr(), &fixtures::two_agent_rcbr()).unwrap());
    assert!(!graphs_equivalent(&unc, &fixtures::uncommon_belief_doxastic()).unwrap());

    let report = equivalence_report(&fixtures::rcbr(), &fixtures::two_agent_rcbr()).unwrap();
    assert_eq!(report[2], AgentVerdict::DesignationDomainsDiffer { in_left: true });
    let report = equivalence_report(&unc, &fixtures::uncommon_belief_doxastic()).unwrap();
    assert_eq!(
        report,
        vec![AgentVerdict::Equivalent, AgentVerdict::Equivalent, AgentVerdict::HierarchiesDiffer]
    );
}

#[test]
fn canonicity() {
    assert!(is_canonical(&fixtures::uncommon_belief()));
    assert!(!is_canonical(&fixtures::belief_collection()));
    assert!(is_canonical(&single()));
}

#[test]
fn local_isomorphisms() {
    let collection = fixtures::belief_collection();
    let unc = fixtures::uncommon_belief();
    let image = |names: &[&str]| NodeMapping::new(names.iter().map(|n| node(&unc, n)).collect());
    // a1 b1 a2 b2 c1 a3 b3
    let alpha = image(&["na", "nb", "na", "nb", "nc", "na", "nb"]);
    assert!(check_local_isomorphism(&collection, &unc, &alpha).unwrap());
    let wrong = image(&["nb", "nb", "na", "nb", "nc", "na", "nb"]);
    assert!(!check_local_isomorphism(&collection, &unc, &wrong).unwrap());

    let identity = NodeMapping::new(unc.nodes().collect());
    assert!(check_local_isomorphism(&unc, &unc, &identity).unwrap());
    assert!(matches!(
        check_local_isomorphism(&collection, &unc, &image(&["na"])),
        Err(Error::PartialMapping(_))
    ));
}

#[test]
fn isomorphisms_of_canonical_graphs() {
    let unc = fixtures::uncommon_belief();
    let out = minimise(&fixtures::belief_collection()).output;
    let iso = find_isomorphism(&out, &unc).unwrap().expect("equivalent canonical graphs");
    assert!(iso.is_bijective(3));
    assert_eq!(find_isomorphism(&unc, &fixtures::uncommon_belief_doxastic()).unwrap(), None);
    let same = find_isomorphism(&unc, &unc).unwrap().unwrap();
    assert_eq!(same, NodeMapping::new(unc.nodes().collect()));
    assert_eq!(
        find_isomorphism(&fixtures::belief_collection(), &unc).unwrap_err(),
        Error::NotCanonical
    );
}

#[test]
fn quotient_of_the_collection() {
    let g = fixtures::belief_collection();
    let p = finest_partition(&g);
    let q = quotient(&g, &p).unwrap();
    assert_eq!(
        serialize_rbr(&q),
        "agents a b c\nnode a1 a\nnode b1 b\nnode c1 c\n\
         edge a1 b1\nedge b1 a1\nedge c1 a1\nedge c1 b1\n\
         real a a1\nreal b b1\nreal c c1\n"
    );
    assert_eq!(quotient(&g, &initial_partition(&g)).unwrap(), q);
    let unc = fixtures::uncommon_belief();
    assert_eq!(quotient(&unc, &Partition::discrete(3)).unwrap(), unc);
    let dox = fixtures::uncommon_belief_doxastic();
    assert_eq!(quotient(&dox, &initial_partition(&dox)).unwrap_err(), Error::NotFinest);
}

#[test]
fn minimisation_examples() {
    let g = fixtures::belief_collection();
    let report = minimise(&g);
    assert_eq!(report.output.node_count(), 3);
    assert!(check_local_isomorphism(&g, &report.output, &report.block_map).unwrap());
    assert!(graphs_equivalent(&report.output, &fixtures::uncommon_belief()).unwrap());

    let unc = fixtures::uncommon_belief();
    let report = minimise(&unc);
    assert!(find_isomorphism(&report.output, &unc).unwrap().is_some());

    assert_eq!(minimise(&single()).output, single());
}

#[test]
fn copies_collapse_onto_originals() {
    // a doxastic copy of the three-agent graph that the real c believes in
    let text = format!(
        "{}node xa a\nnode xb b\nnode xc c\nedge xa xb\nedge xa xc\nedge xb xa\nedge xb xc\nedge xc xa\nedge xc xb\n",
        fixtures::RCBR.replace("edge nc na\n", "edge nc xa\n")
    );
    let g = read_rbr(&text).unwrap();
    assert_eq!(g.node_count(), 6);
    let report = minimise(&g);
    assert_eq!(report.output.node_count(), 3);
    assert_eq!(report.block_map.get(node(&g, "xa")), report.block_map.get(node(&g, "na")));
}
