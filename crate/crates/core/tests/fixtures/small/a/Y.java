package a;

public class Y {
}
