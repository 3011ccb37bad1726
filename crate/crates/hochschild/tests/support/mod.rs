pub mod milnor_oracle;
