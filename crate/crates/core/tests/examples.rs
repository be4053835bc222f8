// Each runnable example is compiled in here as a module and executed.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(analyze_worked_example);
example!(weyl_actions);
example!(rgroup_closed_vs_brute);
example!(elliptic_classification);
example!(component_signs);
example!(catalog);
example!(fuzz);
