fn main() {
    println!("polyvol");
}
